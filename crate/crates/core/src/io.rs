//! JSON formats for algebras, extensions and bimodules.
//!
//! Algebra: `{"field", "dim", "basis_names", "unit", "structure"}` where
//! `structure` lists sparse triples `[i, j, k, c]` meaning `e_i e_j` has
//! coefficient `c` at `e_k`. Maps are stored column-wise: `iota[j]` is the
//! image of `s_j`.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Table};
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldDesc, Scalar};
use crate::linalg::{Mat, Vector};
use crate::modlin::{Bimodule, Extension};

/// Parses `Q`, `F2`, `F_4`, `GF(9)`, `Fp`-style names, case-insensitive.
pub fn parse_field_name(name: &str) -> Result<Field> {
    let s = name.trim().to_ascii_lowercase();
    if s == "q" || s == "qq" || s == "rationals" {
        return Ok(Field::Rationals);
    }
    let digits = s
        .strip_prefix("gf(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix("f_"))
        .or_else(|| s.strip_prefix('f'))
        .or_else(|| s.strip_prefix("gf"))
        .ok_or_else(|| Error::BadField(format!("unrecognized field `{name}`")))?;
    let (p, k) = if let Some((p, k)) = digits.split_once('^') {
        (parse_num(p, name)?, parse_num(k, name)?)
    } else {
        prime_power(parse_num(digits, name)?).ok_or_else(|| Error::BadField(format!("`{name}` is not a prime power")))?
    };
    if k == 1 {
        Field::prime(p)
    } else {
        Field::extension_default(p, k)
    }
}

fn parse_num(s: &str, name: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::BadField(format!("unrecognized field `{name}`")))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field_name(s),
        _ => {
            let d: FieldDesc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("field: {e}")))?;
            Field::from_desc(&d)
        }
    }
}

/// Rationals always as strings; everything else as [`Field::to_json`].
pub fn scalar_out(f: &Field, x: &Scalar) -> Value {
    match x {
        Scalar::Q(q) => Value::from(q.to_string()),
        _ => f.to_json(x),
    }
}

fn field_of(v: &Value, key: &str) -> Result<Value> {
    v.get(key).cloned().ok_or_else(|| Error::Parse(format!("missing `{key}`")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("`{what}` must be an array")))
}

fn as_index(v: &Value, n: usize, what: &str) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| Error::Parse(format!("`{what}` index must be a non-negative integer")))? as usize;
    if i >= n {
        return Err(Error::Parse(format!("`{what}` index {i} out of range for dimension {n}")));
    }
    Ok(i)
}

fn parse_vec(f: &Field, v: &Value, n: usize, what: &str) -> Result<Vector> {
    let a = as_array(v, what)?;
    if a.len() != n {
        return Err(Error::Parse(format!("`{what}` has length {} but expected {n}", a.len())));
    }
    a.iter().map(|x| f.parse_json(x)).collect()
}

/// Reads a matrix stored as a list of columns.
fn parse_cols(f: &Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Mat> {
    let a = as_array(v, what)?;
    if a.len() != cols {
        return Err(Error::Parse(format!("`{what}` has {} columns but expected {cols}", a.len())));
    }
    let cs: Vec<Vector> = a.iter().map(|c| parse_vec(f, c, rows, what)).collect::<Result<_>>()?;
    Ok(Mat::from_cols(rows, &cs))
}

/// Reads a square matrix stored as a list of rows.
fn parse_rows(f: &Field, v: &Value, n: usize, what: &str) -> Result<Mat> {
    let a = as_array(v, what)?;
    if a.len() != n {
        return Err(Error::Parse(format!("`{what}` has {} rows but expected {n}", a.len())));
    }
    let rs: Vec<Vector> = a.iter().map(|r| parse_vec(f, r, n, what)).collect::<Result<_>>()?;
    Ok(Mat::from_rows(n, &rs))
}

fn vec_out(f: &Field, v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| scalar_out(f, x)).collect())
}

pub fn algebra_from_json(v: &Value) -> Result<Algebra> {
    let f = parse_field(&field_of(v, "field")?)?;
    let n = field_of(v, "dim")?.as_u64().ok_or_else(|| Error::Parse("`dim` must be a positive integer".into()))? as usize;
    if n == 0 {
        return Err(Error::Parse("`dim` must be at least 1".into()));
    }
    let unit = parse_vec(&f, &field_of(v, "unit")?, n, "unit")?;
    let mut table = Table::zeros(&f, n);
    for t in as_array(&field_of(v, "structure")?, "structure")? {
        let t = as_array(t, "structure")?;
        if t.len() != 4 {
            return Err(Error::Parse("structure entries are [i, j, k, coefficient]".into()));
        }
        let (i, j, k) = (as_index(&t[0], n, "structure")?, as_index(&t[1], n, "structure")?, as_index(&t[2], n, "structure")?);
        let c = f.parse_json(&t[3])?;
        let prev = table.get(i, j, k).clone();
        table.set(i, j, k, f.add(&prev, &c));
    }
    let names = match v.get("basis_names") {
        None | Some(Value::Null) => None,
        Some(ns) => {
            let ns: Vec<String> = as_array(ns, "basis_names")?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("basis names must be strings".into())))
                .collect::<Result<_>>()?;
            if ns.len() != n {
                return Err(Error::Parse(format!("{} basis names for dimension {n}", ns.len())));
            }
            Some(ns)
        }
    };
    Algebra::new(f, table, unit, names)
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    let f = a.field();
    let structure: Vec<Value> = a.sparse_triples().iter().map(|(i, j, k, c)| json!([i, j, k, scalar_out(f, c)])).collect();
    json!({
        "field": serde_json::to_value(f.desc()).expect("field desc serializes"),
        "dim": a.dim(),
        "basis_names": a.basis_names(),
        "unit": vec_out(f, a.unit()),
        "structure": structure,
    })
}

fn mat_cols_out(f: &Field, m: &Mat) -> Value {
    Value::Array((0..m.cols()).map(|j| vec_out(f, &m.col(j))).collect())
}

fn mat_rows_out(f: &Field, m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_out(f, m.row(i))).collect())
}

pub fn extension_from_json(v: &Value) -> Result<Extension> {
    let s = Arc::new(algebra_from_json(&field_of(v, "S")?)?);
    let r = Arc::new(algebra_from_json(&field_of(v, "R")?)?);
    if s.field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let iota = parse_cols(r.field(), &field_of(v, "iota")?, r.dim(), s.dim(), "iota")?;
    Extension::new(s, r, iota)
}

pub fn extension_to_json(e: &Extension) -> Value {
    json!({
        "S": algebra_to_json(e.s()),
        "R": algebra_to_json(e.r()),
        "iota": mat_cols_out(e.field(), e.iota()),
    })
}

/// Action matrices are `dim × dim`, given row by row.
pub fn bimodule_from_json(v: &Value) -> Result<Bimodule> {
    let t = Arc::new(algebra_from_json(&field_of(v, "T")?)?);
    let r = Arc::new(algebra_from_json(&field_of(v, "R")?)?);
    if t.field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let f = t.field().clone();
    let m = field_of(v, "dim")?.as_u64().ok_or_else(|| Error::Parse("`dim` must be a non-negative integer".into()))? as usize;
    let read = |key: &str, count: usize| -> Result<Vec<Mat>> {
        let a = as_array(v.get(key).ok_or_else(|| Error::Parse(format!("missing `{key}`")))?, key)?;
        if a.len() != count {
            return Err(Error::Parse(format!("`{key}` needs {count} matrices, got {}", a.len())));
        }
        a.iter().map(|x| parse_rows(&f, x, m, key)).collect()
    };
    let left = read("left", t.dim())?;
    let right = read("right", r.dim())?;
    Bimodule::new(t, r, m, left, right)
}

pub fn bimodule_to_json(b: &Bimodule) -> Value {
    let f = b.field();
    json!({
        "T": algebra_to_json(b.left_alg()),
        "R": algebra_to_json(b.right_alg()),
        "dim": b.dim(),
        "left": b.left_ops().iter().map(|m| mat_rows_out(f, m)).collect::<Vec<_>>(),
        "right": b.right_ops().iter().map(|m| mat_rows_out(f, m)).collect::<Vec<_>>(),
    })
}

/// An input file: either an extension or a bimodule, told apart by keys.
#[derive(Debug, Clone)]
pub enum Object {
    Extension(Extension),
    Bimodule(Bimodule),
}

impl Object {
    pub fn from_json(v: &Value) -> Result<Object> {
        let obj: &Map<String, Value> = v.as_object().ok_or_else(|| Error::Parse("top level must be an object".into()))?;
        if obj.contains_key("iota") {
            extension_from_json(v).map(Object::Extension)
        } else if obj.contains_key("left") || obj.contains_key("T") {
            bimodule_from_json(v).map(Object::Bimodule)
        } else if obj.contains_key("structure") {
            // a bare algebra is read as the extension over its base field
            algebra_from_json(v).map(|a| Object::Extension(Extension::over_base_field(Arc::new(a))))
        } else {
            Err(Error::Parse("expected an extension (`S`, `R`, `iota`) or a bimodule (`T`, `R`, `left`, `right`)".into()))
        }
    }

    pub fn from_str(s: &str) -> Result<Object> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Object::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Object::Extension(e) => extension_to_json(e),
            Object::Bimodule(b) => bimodule_to_json(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, upper_triangular};
    use crate::modlin::tests::matrix_over_triangular;
    use crate::modlin::{natural_bimodule, Pattern};

    #[test]
    fn field_names() {
        assert_eq!(parse_field_name("f2").unwrap(), Field::prime(2).unwrap());
        assert_eq!(parse_field_name("GF(3)").unwrap(), Field::prime(3).unwrap());
        assert_eq!(parse_field_name("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field_name("F4").unwrap().order(), Some(4));
        assert_eq!(parse_field_name("F_3^2").unwrap().order(), Some(9));
        assert!(parse_field_name("F6").is_err());
        assert!(parse_field_name("R").is_err());
    }

    #[test]
    fn round_trips() {
        for f in [Field::prime(2).unwrap(), Field::Rationals, Field::extension_default(2, 2).unwrap()] {
            let a = upper_triangular(&f, 2);
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
            let ext = matrix_over_triangular(&f);
            let back = extension_from_json(&extension_to_json(&ext)).unwrap();
            assert_eq!(extension_to_json(&back), extension_to_json(&ext));
            let b = natural_bimodule(&ext, Pattern::SRR);
            let bb = bimodule_from_json(&bimodule_to_json(&b)).unwrap();
            assert_eq!(bimodule_to_json(&bb), bimodule_to_json(&b));
        }
    }

    #[test]
    fn rationals_are_strings() {
        let a = matrix_algebra(&Field::Rationals, 2);
        let j = algebra_to_json(&a);
        assert!(j["structure"][0][3].is_string());
        assert!(j["unit"][0].is_string());
    }

    #[test]
    fn rejects_bad_input() {
        // (e1 e1) e1 = e2 e1 = e1 but e1 (e1 e1) = e1 e2 = 0
        let not_assoc = json!({"field": "F2", "dim": 3, "unit": [1, 0, 0],
            "structure": [[0,0,0,1],[0,1,1,1],[0,2,2,1],[1,0,1,1],[2,0,2,1],[1,1,2,1],[2,1,1,1]]});
        assert!(matches!(algebra_from_json(&not_assoc), Err(Error::NotAssociative(..))));
        let bad_unit = json!({"field": "F2", "dim": 1, "unit": [0], "structure": [[0,0,0,1]]});
        assert!(matches!(algebra_from_json(&bad_unit), Err(Error::BadUnit(_))));
        let out_of_range = json!({"field": "F2", "dim": 1, "unit": [1], "structure": [[0,0,3,1]]});
        assert!(matches!(algebra_from_json(&out_of_range), Err(Error::Parse(_))));
        assert!(Object::from_str("[1,2]").is_err());
    }
}
