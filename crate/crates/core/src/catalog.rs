//! Named example objects with their known property values.
//!
//! An entry is addressed as `family` or `family:key=value,key=value`, e.g.
//! `group_pair:g=S3,h=0+1+2,field=F2`. The `expected` map holds only
//! properties that are established for the family; anything else is
//! computed and reported but not asserted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    base_field_algebra, diagonal, group_algebra, matrix_algebra, polynomial_quotient, truncated_polynomial,
    upper_positions, upper_triangular, AdjoinedBimodule, Algebra,
};
use crate::deciders::{
    check_bimodule, check_extension, BimoduleContext, Config, ExtContext, PropertyReport, ReportOptions, Verdict,
    BIMODULE_PROPERTIES, EXTENSION_PROPERTIES,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::CayleyTable;
use crate::io::{parse_field_name, Object};
use crate::linalg::{unit_vec, Mat, Vector};
use crate::modlin::{group_extension, morita_bimodule, trivial_extension_pair, Extension};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expect {
    Bool(bool),
    Count(u64),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub family: &'static str,
    pub params: BTreeMap<String, String>,
    pub anchor: &'static str,
    pub expected: BTreeMap<String, Expect>,
    pub object: Object,
}

impl CatalogEntry {
    pub fn summary_json(&self) -> Value {
        json!({
            "name": self.name,
            "family": self.family,
            "params": self.params,
            "anchor": self.anchor,
            "expected": self.expected,
        })
    }
}

pub struct Family {
    pub name: &'static str,
    pub anchor: &'static str,
    pub params: &'static [(&'static str, &'static str)],
}

pub const FAMILIES: &[Family] = &[
    Family {
        name: "matrix_over_triangular",
        anchor: "full matrices over upper triangular matrices: projective and H-separable but not quasi-Frobenius",
        params: &[("n", "2"), ("field", "F2")],
    },
    Family {
        name: "triangular_over_diagonal",
        anchor: "upper triangular over diagonal matrices: split and projective, not Frobenius",
        params: &[("n", "2"), ("field", "F2")],
    },
    Family {
        name: "z2z2_over_z2",
        anchor: "F2 x F2 over F2: split, separable, Frobenius; two projections, unique Frobenius homomorphism",
        params: &[],
    },
    Family {
        name: "group_pair",
        anchor: "k[G] over k[H]: always split and Frobenius; separable iff char k does not divide [G:H]",
        params: &[("g", "S3"), ("h", "0+1+2"), ("field", "F2")],
    },
    Family {
        name: "field_extension",
        anchor: "F_{p^k} over F_p with p not dividing k: the trace is a Frobenius homomorphism",
        params: &[("p", "2"), ("k", "3")],
    },
    Family {
        name: "morita_bimodule",
        anchor: "column vectors as an (M_n(k), k)-bimodule: biseparable and Frobenius",
        params: &[("n", "2"), ("field", "F2")],
    },
    Family {
        name: "trivial_ext_pair",
        anchor: "S + I inside R + I is separable exactly when S inside R is",
        params: &[("base", "z2z2"), ("ideal", "regular")],
    },
    Family {
        name: "identity_ext",
        anchor: "an algebra over itself has every property",
        params: &[("algebra", "t2"), ("field", "F2")],
    },
];

/// Instances used by the acceptance suite and `catalog list`.
pub const STANDARD: &[&str] = &[
    "matrix_over_triangular",
    "matrix_over_triangular:field=Q",
    "triangular_over_diagonal",
    "triangular_over_diagonal:field=Q",
    "triangular_over_diagonal:n=3",
    "z2z2_over_z2",
    "group_pair:g=C2,h=0,field=F3",
    "group_pair:g=C2,h=0,field=F2",
    "group_pair:g=S3,h=0+1+2,field=F2",
    "group_pair:g=S3,h=0+1+2,field=F3",
    "group_pair:g=S3,h=0+3,field=F2",
    "group_pair:g=S3,h=0+3,field=F3",
    "group_pair:g=C4,h=0+2,field=F3",
    "group_pair:g=D4,h=0+1+2+3,field=F3",
    "field_extension:p=2,k=3",
    "field_extension:p=3,k=2",
    "morita_bimodule",
    "morita_bimodule:field=Q",
    "morita_bimodule:n=3",
    "trivial_ext_pair:base=z2z2,ideal=regular",
    "trivial_ext_pair:base=z2z2,ideal=square_zero",
    "trivial_ext_pair:base=f2c2,ideal=regular",
    "trivial_ext_pair:base=f3c2,ideal=square_zero",
    "identity_ext",
    "identity_ext:algebra=m2,field=Q",
    "identity_ext:algebra=c3,field=F2",
];

pub fn family(name: &str) -> Result<&'static Family> {
    FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn parse_spec(spec: &str) -> Result<(&'static Family, BTreeMap<String, String>)> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let fam = family(name.trim())?;
    let mut params: BTreeMap<String, String> = fam.params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::BadParams(format!("expected key=value, got `{kv}`")))?;
        if !params.contains_key(k) {
            return Err(Error::BadParams(format!("`{}` takes no parameter `{k}`", fam.name)));
        }
        params.insert(k.to_string(), v.trim().to_string());
    }
    Ok((fam, params))
}

/// Family name plus every parameter in declaration order.
fn canonical_name(fam: &Family, params: &BTreeMap<String, String>) -> String {
    if fam.params.is_empty() {
        return fam.name.to_string();
    }
    let kv: Vec<String> = fam.params.iter().map(|(k, _)| format!("{k}={}", params[*k])).collect();
    format!("{}:{}", fam.name, kv.join(","))
}

fn param_usize(params: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    params[key].parse().map_err(|_| Error::BadParams(format!("`{key}` must be a non-negative integer")))
}

fn expect(pairs: &[(&str, Expect)]) -> BTreeMap<String, Expect> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

use Expect::{Bool, Count};

pub fn build(spec: &str) -> Result<CatalogEntry> {
    let (fam, params) = parse_spec(spec)?;
    let field = || parse_field_name(&params["field"]);
    let (object, expected) = match fam.name {
        "matrix_over_triangular" => {
            let n = param_usize(&params, "n")?;
            if n < 2 {
                return Err(Error::BadParams("n must be at least 2".into()));
            }
            let f = field()?;
            let ext = matrix_over_triangular(&f, n)?;
            let e = expect(&[
                ("separable", Bool(true)),
                ("h_separable", Bool(true)),
                ("fgp_left", Bool(true)),
                ("fgp_right", Bool(true)),
                ("frobenius", Bool(false)),
                ("qf_left", Bool(false)),
                ("qf_right", Bool(false)),
                ("qf", Bool(false)),
            ]);
            (Object::Extension(ext), e)
        }
        "triangular_over_diagonal" => {
            let n = param_usize(&params, "n")?;
            if n < 2 {
                return Err(Error::BadParams("n must be at least 2".into()));
            }
            let f = field()?;
            let e = expect(&[
                ("split", Bool(true)),
                ("fgp_left", Bool(true)),
                ("fgp_right", Bool(true)),
                ("frobenius", Bool(false)),
            ]);
            (Object::Extension(triangular_over_diagonal(&f, n)?), e)
        }
        "z2z2_over_z2" => {
            let f = Field::prime(2)?;
            let ext = Extension::over_base_field(Arc::new(diagonal(&f, 2)));
            let e = expect(&[
                ("split", Bool(true)),
                ("separable", Bool(true)),
                ("frobenius", Bool(true)),
                ("projection_count", Count(2)),
                ("frobenius_hom_count", Count(1)),
            ]);
            (Object::Extension(ext), e)
        }
        "group_pair" => {
            let f = field()?;
            let g = CayleyTable::by_name(&params["g"])?;
            let h = parse_elements(&params["h"], g.order())?;
            let ext = group_extension(&f, &g, &h)?;
            let index = (g.order() / ext.s().dim()) as u32;
            let p = f.characteristic();
            let separable = p == 0 || index % p != 0;
            let e = expect(&[("split", Bool(true)), ("frobenius", Bool(true)), ("separable", Bool(separable))]);
            (Object::Extension(ext), e)
        }
        "field_extension" => {
            let p = param_usize(&params, "p")? as u32;
            let k = param_usize(&params, "k")? as u32;
            if k >= 2 && k % p == 0 {
                return Err(Error::BadParams("the degree must not be divisible by the characteristic".into()));
            }
            let ext = field_extension(p, k)?;
            let e = expect(&[("split", Bool(true)), ("separable", Bool(true)), ("frobenius", Bool(true))]);
            (Object::Extension(ext), e)
        }
        "morita_bimodule" => {
            let n = param_usize(&params, "n")?;
            if n == 0 {
                return Err(Error::BadParams("n must be positive".into()));
            }
            let b = morita_bimodule(&field()?, n);
            (Object::Bimodule(b), expect(&[("biseparable", Bool(true)), ("frobenius", Bool(true))]))
        }
        "trivial_ext_pair" => {
            let (base, separable) = match params["base"].as_str() {
                "z2z2" => (Extension::over_base_field(Arc::new(diagonal(&Field::prime(2)?, 2))), true),
                "f2c2" => (group_extension(&Field::prime(2)?, &CayleyTable::cyclic(2), &[0])?, false),
                "f3c2" => (group_extension(&Field::prime(3)?, &CayleyTable::cyclic(2), &[0])?, true),
                other => return Err(Error::BadParams(format!("unknown base `{other}` (z2z2, f2c2, f3c2)"))),
            };
            let i = match params["ideal"].as_str() {
                "regular" => AdjoinedBimodule::regular(base.r(), true),
                "square_zero" => AdjoinedBimodule::regular(base.r(), false),
                other => return Err(Error::BadParams(format!("unknown ideal `{other}` (regular, square_zero)"))),
            };
            let ext = trivial_extension_pair(&base, &i)?;
            (Object::Extension(ext), expect(&[("separable", Bool(separable))]))
        }
        "identity_ext" => {
            let a = named_algebra(&params["algebra"], &field()?)?;
            let mut e: BTreeMap<String, Expect> = EXTENSION_PROPERTIES
                .iter()
                .filter(|p| !p.ends_with("_count"))
                .map(|p| (p.to_string(), Bool(true)))
                .collect();
            e.insert("projection_count".into(), Count(1));
            (Object::Extension(Extension::identity(Arc::new(a))), e)
        }
        _ => unreachable!("family table and builder agree"),
    };
    Ok(CatalogEntry { name: canonical_name(fam, &params), family: fam.name, params, anchor: fam.anchor, expected, object })
}

/// `0+3` → `[0, 3]`; `1` alone means the trivial subgroup.
fn parse_elements(s: &str, order: usize) -> Result<Vec<usize>> {
    s.split('+')
        .map(|x| {
            let i: usize = x.trim().parse().map_err(|_| Error::BadParams(format!("bad element index `{x}`")))?;
            if i >= order {
                return Err(Error::BadParams(format!("element {i} out of range")));
            }
            Ok(i)
        })
        .collect()
}

/// `T_n(k) ⊆ M_n(k)`.
pub fn matrix_over_triangular(f: &Field, n: usize) -> Result<Extension> {
    let m = Arc::new(matrix_algebra(f, n));
    let t = Arc::new(upper_triangular(f, n));
    let cols: Vec<Vector> = upper_positions(n).iter().map(|&(i, j)| unit_vec(f, n * n, i * n + j)).collect();
    Extension::new(t, m, Mat::from_cols(n * n, &cols))
}

/// `D_n(k) ⊆ T_n(k)`.
pub fn triangular_over_diagonal(f: &Field, n: usize) -> Result<Extension> {
    let pos = upper_positions(n);
    let r = Arc::new(upper_triangular(f, n));
    let s = Arc::new(diagonal(f, n));
    let cols: Vec<Vector> = (0..n)
        .map(|i| unit_vec(f, pos.len(), pos.iter().position(|&p| p == (i, i)).expect("diagonal position")))
        .collect();
    Extension::new(s, r, Mat::from_cols(pos.len(), &cols))
}

/// `F_{p^k}` as `F_p[x]/(g)` over `F_p`, with `g` the default modulus.
pub fn field_extension(p: u32, k: u32) -> Result<Extension> {
    let fp = Field::prime(p)?;
    let modulus: Vec<u32> = match Field::extension_default(p, k)? {
        Field::Ext(d) => d.modulus.clone(),
        _ => vec![0, 1],
    };
    let g: Vector = modulus.iter().map(|&c| fp.from_int(c as i64)).collect();
    Ok(Extension::over_base_field(Arc::new(polynomial_quotient(&fp, &g)?)))
}

/// Small algebras by short name.
pub fn named_algebra(name: &str, f: &Field) -> Result<Algebra> {
    let lower = name.to_ascii_lowercase();
    Ok(match lower.as_str() {
        "k" => base_field_algebra(f),
        "t2" => upper_triangular(f, 2),
        "t3" => upper_triangular(f, 3),
        "m2" => matrix_algebra(f, 2),
        "m3" => matrix_algebra(f, 3),
        "d2" => diagonal(f, 2),
        "d3" => diagonal(f, 3),
        "dual" => truncated_polynomial(f, 2),
        _ if lower.starts_with('c') || lower.starts_with('d') || lower == "s3" => group_algebra(f, &CayleyTable::by_name(&lower)?),
        _ => return Err(Error::BadParams(format!("unknown algebra `{name}`"))),
    })
}

pub fn list() -> Vec<CatalogEntry> {
    STANDARD.iter().map(|s| build(s).expect("standard entries build")).collect()
}

/// One expected value that the deciders did not reproduce.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub entry: String,
    pub property: String,
    pub expected: Expect,
    pub actual: Value,
}

/// Runs every property on the entry and compares with `expected`.
pub fn check_entry(entry: &CatalogEntry, cfg: Config, opts: ReportOptions) -> Result<(PropertyReport, Vec<Mismatch>)> {
    let report = match &entry.object {
        Object::Extension(e) => {
            let ctx = ExtContext::new(e.clone(), cfg);
            let props: Vec<String> = EXTENSION_PROPERTIES.iter().map(|s| s.to_string()).collect();
            check_extension(&entry.name, &ctx, &props, opts)?
        }
        Object::Bimodule(b) => {
            let ctx = BimoduleContext::new(b.clone(), cfg);
            let props: Vec<String> = BIMODULE_PROPERTIES.iter().map(|s| s.to_string()).collect();
            check_bimodule(&entry.name, &ctx, &props, opts)?
        }
    };
    let mut out = Vec::new();
    for (p, want) in &entry.expected {
        let actual = match report.properties.get(p) {
            Some(e) => match want {
                Bool(_) => json!(e.verdict),
                Count(_) => e.count.clone().unwrap_or(json!(e.verdict)),
            },
            None => Value::Null,
        };
        let ok = match want {
            Bool(b) => actual == json!(Verdict::from_bool(*b)),
            Count(n) => actual == json!(n),
        };
        if !ok {
            out.push(Mismatch { entry: entry.name.clone(), property: p.clone(), expected: *want, actual });
        }
    }
    Ok((report, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_entries_build_and_round_trip() {
        for spec in STANDARD {
            let e = build(spec).unwrap();
            assert_eq!(build(&e.name).unwrap().name, e.name);
            let back = Object::from_json(&e.object.to_json()).unwrap();
            assert_eq!(back.to_json(), e.object.to_json());
        }
    }

    #[test]
    fn standard_entries_match_expectations() {
        let opts = ReportOptions { witnesses: false, timing: false, parallel: true };
        for e in list() {
            let (report, mismatches) = check_entry(&e, Config { budget: 1_000_000 }, opts).unwrap();
            assert!(mismatches.is_empty(), "{mismatches:?}");
            assert!(report.implication_violations.is_empty(), "{}: {:?}", e.name, report.implication_violations);
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(build("nope"), Err(Error::UnknownEntry(_))));
        assert!(matches!(build("group_pair:h=0+3+4"), Err(Error::BadParams(_))));
        assert!(matches!(build("matrix_over_triangular:n=1"), Err(Error::BadParams(_))));
        assert!(matches!(build("matrix_over_triangular:q=1"), Err(Error::BadParams(_))));
        assert!(matches!(build("field_extension:p=2,k=2"), Err(Error::BadParams(_))));
    }

    #[test]
    fn group_pair_expectations_follow_the_index() {
        let e = build("group_pair:g=S3,h=0+3,field=F3").unwrap();
        assert_eq!(e.expected["separable"], Bool(false));
        let e = build("group_pair:g=S3,h=0+3,field=F2").unwrap();
        assert_eq!(e.expected["separable"], Bool(true));
    }

    #[test]
    fn field_extension_is_a_field() {
        let Object::Extension(ext) = build("field_extension:p=3,k=2").unwrap().object else { panic!() };
        let r = ext.r();
        assert_eq!(r.dim(), 2);
        // every nonzero element is a unit
        let f = r.field();
        for a in 0..3 {
            for b in 0..3 {
                if (a, b) != (0, 0) {
                    assert!(r.is_unit(&[f.from_int(a), f.from_int(b)]));
                }
            }
        }
    }
}
