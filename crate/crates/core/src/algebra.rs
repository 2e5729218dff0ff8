//! Finite-dimensional unital associative algebras given by structure
//! constants `e_i e_j = Σ_k c[i][j][k] e_k`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::CayleyTable;
use crate::linalg::{
    combine_vecs, is_zero_vec, nullspace, unit_vec, vec_add, Mat, Subspace, Vector,
};

/// Fraction of nonzero structure constants above which the dense table is used.
const DENSE_FILL: f64 = 0.25;

#[derive(Debug, Clone)]
enum Structure {
    /// `data[(i*n + j)*n + k] = c[i][j][k]`
    Dense(Vec<Scalar>),
    /// `terms[i*n + j]` lists the nonzero `(k, c[i][j][k])`
    Sparse(Vec<Vec<(usize, Scalar)>>),
}

#[derive(Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    basis_names: Vec<String>,
    structure: Structure,
    unit: Vector,
    left_ops: OnceLock<Vec<Mat>>,
    right_ops: OnceLock<Vec<Mat>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            field: self.field.clone(),
            dim: self.dim,
            basis_names: self.basis_names.clone(),
            structure: self.structure.clone(),
            unit: self.unit.clone(),
            left_ops: OnceLock::new(),
            right_ops: OnceLock::new(),
        }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.dim != other.dim || self.unit != other.unit {
            return false;
        }
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.product_basis(i, j) == other.product_basis(i, j)))
    }
}

impl Eq for Algebra {}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-dimensional algebra over {}", self.dim, self.field)
    }
}

/// Dense structure-constant table used while building algebras.
pub struct Table {
    pub n: usize,
    pub data: Vec<Scalar>,
}

impl Table {
    pub fn zeros(f: &Field, n: usize) -> Table {
        Table { n, data: vec![f.zero(); n * n * n] }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let n = self.n;
        self.data[(i * n + j) * n + k] = c;
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.n;
        &self.data[(i * n + j) * n + k]
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

impl Algebra {
    /// Validates associativity and the unit law exhaustively.
    pub fn new(field: Field, table: Table, unit: Vector, basis_names: Option<Vec<String>>) -> Result<Algebra> {
        let a = Algebra::from_table_unchecked(field, table, unit, basis_names)?;
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn from_table_unchecked(
        field: Field,
        table: Table,
        unit: Vector,
        basis_names: Option<Vec<String>>,
    ) -> Result<Algebra> {
        let n = table.n;
        if n == 0 {
            return Err(Error::DimensionMismatch("algebras must have positive dimension".into()));
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch(format!("unit has length {} for dimension {n}", unit.len())));
        }
        if table.data.iter().chain(&unit).any(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch);
        }
        let names = basis_names.unwrap_or_else(|| default_names(n));
        if names.len() != n {
            return Err(Error::DimensionMismatch("basis_names length differs from dim".into()));
        }
        let nonzero = table.data.iter().filter(|x| !field.is_zero(x)).count();
        let structure = if nonzero as f64 > DENSE_FILL * (n * n * n) as f64 {
            Structure::Dense(table.data)
        } else {
            let mut terms = vec![Vec::new(); n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let c = table.get(i, j, k);
                        if !field.is_zero(c) {
                            terms[i * n + j].push((k, c.clone()));
                        }
                    }
                }
            }
            Structure::Sparse(terms)
        };
        Ok(Algebra {
            field,
            dim: n,
            basis_names: names,
            structure,
            unit,
            left_ops: OnceLock::new(),
            right_ops: OnceLock::new(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for j in 0..n {
            let e = unit_vec(&self.field, n, j);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::BadUnit(j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_basis(i, j);
                for k in 0..n {
                    let ek = unit_vec(&self.field, n, k);
                    let left = self.mul(&ij, &ek);
                    let jk = self.product_basis(j, k);
                    let ei = unit_vec(&self.field, n, i);
                    let right = self.mul(&ei, &jk);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.structure, Structure::Dense(_))
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(&self.field, self.dim, i)
    }

    pub fn zero_vec(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    /// Structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let n = self.dim;
        match &self.structure {
            Structure::Dense(d) => d[(i * n + j) * n + k].clone(),
            Structure::Sparse(t) => t[i * n + j]
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| self.field.zero()),
        }
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim;
        match &self.structure {
            Structure::Dense(d) => d[(i * n + j) * n..(i * n + j + 1) * n].to_vec(),
            Structure::Sparse(t) => {
                let mut v = self.zero_vec();
                for (k, c) in &t[i * n + j] {
                    v[*k] = c.clone();
                }
                v
            }
        }
    }

    /// Nonzero sparse terms of `e_i e_j` without allocating a dense vector
    /// for sparse tables.
    fn for_each_term(&self, i: usize, j: usize, mut visit: impl FnMut(usize, &Scalar)) {
        let n = self.dim;
        match &self.structure {
            Structure::Dense(d) => {
                for k in 0..n {
                    let c = &d[(i * n + j) * n + k];
                    if !self.field.is_zero(c) {
                        visit(k, c);
                    }
                }
            }
            Structure::Sparse(t) => {
                for (k, c) in &t[i * n + j] {
                    visit(*k, c);
                }
            }
        }
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = &self.field;
        let n = self.dim;
        let mut out = self.zero_vec();
        for i in 0..n {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let xy = f.mul(&x[i], &y[j]);
                self.for_each_term(i, j, |k, c| {
                    out[k] = f.mul_add(&out[k], &xy, c);
                });
            }
        }
        out
    }

    /// Matrices of left multiplication by each basis element (cached).
    pub fn left_ops(&self) -> &[Mat] {
        self.left_ops.get_or_init(|| {
            let n = self.dim;
            (0..n)
                .map(|i| {
                    let mut m = Mat::zeros(&self.field, n, n);
                    for j in 0..n {
                        self.for_each_term(i, j, |k, c| m.set(k, j, c.clone()));
                    }
                    m
                })
                .collect()
        })
    }

    /// Matrices of right multiplication by each basis element (cached).
    pub fn right_ops(&self) -> &[Mat] {
        self.right_ops.get_or_init(|| {
            let n = self.dim;
            (0..n)
                .map(|i| {
                    let mut m = Mat::zeros(&self.field, n, n);
                    for j in 0..n {
                        self.for_each_term(j, i, |k, c| m.set(k, j, c.clone()));
                    }
                    m
                })
                .collect()
        })
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        Mat::combination(&self.field, x, self.left_ops())
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Mat {
        Mat::combination(&self.field, x, self.right_ops())
    }

    pub fn table(&self) -> Table {
        let n = self.dim;
        let mut t = Table::zeros(&self.field, n);
        for i in 0..n {
            for j in 0..n {
                self.for_each_term(i, j, |k, c| t.set(i, j, k, c.clone()));
            }
        }
        t
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.product_basis(i, j) == self.product_basis(j, i)))
    }

    /// Nonzero structure-constant triples, in `(i, j, k)` order.
    pub fn sparse_triples(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                self.for_each_term(i, j, |k, c| out.push((i, j, k, c.clone())));
            }
        }
        out
    }

    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        crate::linalg::inverse(&self.field, &self.left_mul_matrix(x)).is_some()
    }

    /// `x^e` by repeated squaring.
    pub fn power(&self, x: &[Scalar], mut e: u64) -> Vector {
        let mut acc = self.unit.clone();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent_element(&self, x: &[Scalar]) -> bool {
        is_zero_vec(&self.field, &self.power(x, self.dim as u64))
    }
}

// ---------------------------------------------------------------------------
// constructors

/// Validating constructor from a dense table.
pub fn make_algebra(field: Field, table: Table, unit: Vector) -> Result<Algebra> {
    Algebra::new(field, table, unit, None)
}

pub fn base_field_algebra(f: &Field) -> Algebra {
    let mut t = Table::zeros(f, 1);
    t.set(0, 0, 0, f.one());
    Algebra::from_table_unchecked(f.clone(), t, vec![f.one()], Some(vec!["1".into()])).unwrap()
}

/// `M_n(k)` with basis `e_{ij}` at index `i*n + j`.
pub fn matrix_algebra(f: &Field, n: usize) -> Algebra {
    assert!(n >= 1);
    let d = n * n;
    let mut t = Table::zeros(f, d);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.set(i * n + j, j * n + l, i * n + l, f.one());
            }
        }
    }
    let mut unit = vec![f.zero(); d];
    for i in 0..n {
        unit[i * n + i] = f.one();
    }
    let names = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
    Algebra::from_table_unchecked(f.clone(), t, unit, Some(names)).unwrap()
}

/// Positions `(i, j)` with `i ≤ j`, row-major.
pub fn upper_positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Subalgebra of `M_n(k)` spanned by matrix units at the given positions.
fn matrix_unit_algebra(f: &Field, n: usize, pos: &[(usize, usize)]) -> Algebra {
    let d = pos.len();
    let idx = |p: (usize, usize)| pos.iter().position(|&q| q == p);
    let mut t = Table::zeros(f, d);
    for (a, &(i, j)) in pos.iter().enumerate() {
        for (b, &(k, l)) in pos.iter().enumerate() {
            if j == k {
                let c = idx((i, l)).expect("positions closed under multiplication");
                t.set(a, b, c, f.one());
            }
        }
    }
    let mut unit = vec![f.zero(); d];
    for i in 0..n {
        unit[idx((i, i)).expect("diagonal present")] = f.one();
    }
    let names = pos.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
    Algebra::from_table_unchecked(f.clone(), t, unit, Some(names)).unwrap()
}

pub fn upper_triangular(f: &Field, n: usize) -> Algebra {
    matrix_unit_algebra(f, n, &upper_positions(n))
}

pub fn diagonal(f: &Field, n: usize) -> Algebra {
    let pos: Vec<_> = (0..n).map(|i| (i, i)).collect();
    matrix_unit_algebra(f, n, &pos)
}

/// `k[x]/(g)` for monic `g` (coefficients low degree first, leading 1
/// included), basis `1, x, …, x^{d-1}`.
pub fn polynomial_quotient(f: &Field, g: &[Scalar]) -> Result<Algebra> {
    let d = g.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| Error::BadParams("modulus must have degree ≥ 1".into()))?;
    if !f.is_one(&g[d]) {
        return Err(Error::BadParams("modulus must be monic".into()));
    }
    // x^m reduced mod g, for m < 2d - 1
    let mut powers: Vec<Vector> = Vec::with_capacity(2 * d);
    for m in 0..2 * d - 1 {
        let v = if m < d {
            let mut v = vec![f.zero(); d];
            v[m] = f.one();
            v
        } else {
            // x · x^{m-1}: shift, then replace x^d by −(g_0 + … + g_{d-1} x^{d-1})
            let prev = &powers[m - 1];
            let top = prev[d - 1].clone();
            let mut v = vec![f.zero(); d];
            for i in 1..d {
                v[i] = prev[i - 1].clone();
            }
            for i in 0..d {
                v[i] = f.sub(&v[i], &f.mul(&top, &g[i]));
            }
            v
        };
        powers.push(v);
    }
    let mut t = Table::zeros(f, d);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in powers[i + j].iter().enumerate() {
                t.set(i, j, k, c.clone());
            }
        }
    }
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    let names = (0..d).map(|i| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    });
    Algebra::new(f.clone(), t, unit, Some(names.collect()))
}

/// `k[x]/(x^n)`.
pub fn truncated_polynomial(f: &Field, n: usize) -> Algebra {
    let mut g = vec![f.zero(); n + 1];
    g[n] = f.one();
    polynomial_quotient(f, &g).expect("x^n is monic")
}

pub fn group_algebra(f: &Field, g: &CayleyTable) -> Algebra {
    let n = g.order();
    let mut t = Table::zeros(f, n);
    for a in 0..n {
        for b in 0..n {
            t.set(a, b, g.mul(a, b), f.one());
        }
    }
    let unit = unit_vec(f, n, g.identity());
    let names = g.names().to_vec();
    Algebra::from_table_unchecked(f.clone(), t, unit, Some(names)).unwrap()
}

pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let (n, m) = (a.dim, b.dim);
    let mut t = Table::zeros(f, n + m);
    for (i, j, k, c) in a.sparse_triples() {
        t.set(i, j, k, c);
    }
    for (i, j, k, c) in b.sparse_triples() {
        t.set(n + i, n + j, n + k, c);
    }
    let mut unit = a.unit.clone();
    unit.extend(b.unit.iter().cloned());
    let mut names: Vec<String> = a.basis_names.iter().map(|s| format!("({s},0)")).collect();
    names.extend(b.basis_names.iter().map(|s| format!("(0,{s})")));
    Algebra::from_table_unchecked(f.clone(), t, unit, Some(names))
}

/// `A ⊗_k B` with basis `a_i ⊗ b_j` at index `i*dim B + j`.
pub fn tensor_over_field(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let (n, m) = (a.dim, b.dim);
    let mut t = Table::zeros(f, n * m);
    let bt = b.sparse_triples();
    for (i, i2, k, c) in a.sparse_triples() {
        for (j, j2, l, d) in &bt {
            t.set(i * m + j, i2 * m + j2, k * m + l, f.mul(&c, d));
        }
    }
    let mut unit = Vec::with_capacity(n * m);
    for x in &a.unit {
        for y in &b.unit {
            unit.push(f.mul(x, y));
        }
    }
    let names = a
        .basis_names
        .iter()
        .flat_map(|s| b.basis_names.iter().map(move |r| format!("{s}⊗{r}")))
        .collect();
    Algebra::from_table_unchecked(f.clone(), t, unit, Some(names))
}

pub fn opposite(a: &Algebra) -> Algebra {
    let f = &a.field;
    let mut t = Table::zeros(f, a.dim);
    for (i, j, k, c) in a.sparse_triples() {
        t.set(j, i, k, c);
    }
    Algebra::from_table_unchecked(f.clone(), t, a.unit.clone(), Some(a.basis_names.clone())).unwrap()
}

/// `S ⊗ R^op`, whose left modules are the `S`-`R`-bimodules.
pub fn enveloping(s: &Algebra, r: &Algebra) -> Result<Algebra> {
    tensor_over_field(s, &opposite(r))
}

/// A bimodule over an algebra `R` with an associative internal product
/// compatible with the actions, to be adjoined as `R ⊕ I`.
#[derive(Debug, Clone)]
pub struct AdjoinedBimodule {
    pub dim: usize,
    /// `left[i]`: matrix of `x ↦ r_i x`
    pub left: Vec<Mat>,
    /// `right[i]`: matrix of `x ↦ x r_i`
    pub right: Vec<Mat>,
    /// `product[a*dim + b]` = coordinates of `x_a x_b`
    pub product: Vec<Vector>,
}

impl AdjoinedBimodule {
    pub fn zero() -> AdjoinedBimodule {
        AdjoinedBimodule { dim: 0, left: Vec::new(), right: Vec::new(), product: Vec::new() }
    }

    /// `R` as a bimodule over itself; `I·I` is either zero or the
    /// multiplication of `R`.
    pub fn regular(r: &Algebra, with_product: bool) -> AdjoinedBimodule {
        let n = r.dim;
        let product = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| if with_product { r.product_basis(a, b) } else { r.zero_vec() })
            .collect();
        AdjoinedBimodule {
            dim: n,
            left: r.left_ops().to_vec(),
            right: r.right_ops().to_vec(),
            product,
        }
    }

    pub fn square_zero(dim: usize, left: Vec<Mat>, right: Vec<Mat>, f: &Field) -> AdjoinedBimodule {
        AdjoinedBimodule { dim, left, right, product: vec![vec![f.zero(); dim]; dim * dim] }
    }

    pub fn has_zero_product(&self, f: &Field) -> bool {
        self.product.iter().all(|v| is_zero_vec(f, v))
    }
}

/// `R ⊕ I` with `(r, x)(r', x') = (rr', rx' + xr' + xx')`; associativity is
/// revalidated.
pub fn trivial_extension(r: &Algebra, i: &AdjoinedBimodule) -> Result<Algebra> {
    let f = &r.field;
    let (n, m) = (r.dim, i.dim);
    if m > 0 && (i.left.len() != n || i.right.len() != n || i.product.len() != m * m) {
        return Err(Error::DimensionMismatch("bimodule data does not match the algebra".into()));
    }
    let d = n + m;
    let mut t = Table::zeros(f, d);
    for (a, b, k, c) in r.sparse_triples() {
        t.set(a, b, k, c);
    }
    for a in 0..n {
        for x in 0..m {
            for y in 0..m {
                // r_a x_x is column x of left[a]
                let lv = i.left[a].get(y, x).clone();
                if !f.is_zero(&lv) {
                    t.set(a, n + x, n + y, lv);
                }
                let rv = i.right[a].get(y, x).clone();
                if !f.is_zero(&rv) {
                    t.set(n + x, a, n + y, rv);
                }
            }
        }
    }
    for x in 0..m {
        for y in 0..m {
            for (z, c) in i.product[x * m + y].iter().enumerate() {
                if !f.is_zero(c) {
                    t.set(n + x, n + y, n + z, c.clone());
                }
            }
        }
    }
    let mut unit = r.unit.clone();
    unit.extend(std::iter::repeat(f.zero()).take(m));
    let mut names = r.basis_names.clone();
    names.extend((0..m).map(|x| format!("x{x}")));
    Algebra::new(f.clone(), t, unit, Some(names))
}

// ---------------------------------------------------------------------------
// subspaces, ideals, centres

/// `{x : x g = g x for every g in gens}`.
pub fn centralizer(a: &Algebra, gens: &[Vector]) -> Subspace {
    let f = &a.field;
    let n = a.dim;
    let mut rows: Vec<Vector> = Vec::new();
    for g in gens {
        // x ↦ x g − g x, as a matrix in x
        let m = a.right_mul_matrix(g).sub(f, &a.left_mul_matrix(g));
        for i in 0..n {
            rows.push(m.row(i).to_vec());
        }
    }
    if rows.is_empty() {
        return Subspace::full(f, n);
    }
    let ker = nullspace(f, &Mat::from_rows(n, &rows));
    Subspace::span(f, n, &ker)
}

pub fn center(a: &Algebra) -> Subspace {
    let gens: Vec<Vector> = (0..a.dim).map(|i| a.basis_vec(i)).collect();
    centralizer(a, &gens)
}

/// A two-sided ideal, stored by its canonical echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub space: Subspace,
}

impl Ideal {
    pub fn zero(a: &Algebra) -> Ideal {
        Ideal { space: Subspace::zero(a.dim) }
    }

    pub fn from_subspace(a: &Algebra, space: Subspace) -> Result<Ideal> {
        if !is_two_sided_closed(a, &space) {
            return Err(Error::BadParams("subspace is not a two-sided ideal".into()));
        }
        Ok(Ideal { space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Span of all products `x y` with `x ∈ self`, `y ∈ other`.
    pub fn product(&self, a: &Algebra, other: &Ideal) -> Ideal {
        let mut v = Vec::new();
        for x in self.space.basis() {
            for y in other.space.basis() {
                v.push(a.mul(x, y));
            }
        }
        Ideal { space: Subspace::span(&a.field, a.dim, &v) }
    }

    /// `I^k = 0` for some `k ≤ dim A`.
    pub fn is_nilpotent(&self, a: &Algebra) -> bool {
        let mut p = self.clone();
        for _ in 0..=a.dim {
            if p.dim() == 0 {
                return true;
            }
            p = p.product(a, self);
        }
        p.dim() == 0
    }
}

pub fn is_two_sided_closed(a: &Algebra, s: &Subspace) -> bool {
    let f = &a.field;
    s.basis().iter().all(|x| {
        (0..a.dim).all(|i| {
            let e = a.basis_vec(i);
            s.contains(f, &a.mul(&e, x)) && s.contains(f, &a.mul(x, &e))
        })
    })
}

/// Two-sided ideal generated by the given elements.
pub fn ideal_generated(a: &Algebra, gens: &[Vector]) -> Ideal {
    let f = &a.field;
    let mut vecs = Vec::new();
    for g in gens {
        for i in 0..a.dim {
            let l = a.mul(&a.basis_vec(i), g);
            for j in 0..a.dim {
                vecs.push(a.mul(&l, &a.basis_vec(j)));
            }
        }
    }
    Ideal { space: Subspace::span(f, a.dim, &vecs) }
}

/// Largest two-sided ideal contained in the subspace `v`.
pub fn largest_ideal_in(a: &Algebra, v: &Subspace) -> Ideal {
    let f = &a.field;
    let mut cur = v.clone();
    loop {
        // {x ∈ cur : e_i x ∈ cur and x e_i ∈ cur for all i}
        let basis = cur.basis().to_vec();
        let d = basis.len();
        if d == 0 {
            return Ideal { space: cur };
        }
        let mut rows: Vec<Vector> = Vec::new();
        for i in 0..a.dim {
            let e = a.basis_vec(i);
            for side in 0..2 {
                // residue of (e·b_t) or (b_t·e) modulo cur, as columns
                let images: Vec<Vector> = basis
                    .iter()
                    .map(|b| {
                        let p = if side == 0 { a.mul(&e, b) } else { a.mul(b, &e) };
                        cur.reduce(f, &p)
                    })
                    .collect();
                let m = Mat::from_cols(a.dim, &images);
                for r in 0..a.dim {
                    rows.push(m.row(r).to_vec());
                }
            }
        }
        let ker = nullspace(f, &Mat::from_rows(d, &rows));
        let next_vecs: Vec<Vector> = ker.iter().map(|c| combine_vecs(f, c, &basis, a.dim)).collect();
        let next = Subspace::span(f, a.dim, &next_vecs);
        if next.dim() == cur.dim() {
            return Ideal { space: cur };
        }
        cur = next;
    }
}

/// `A / I` together with the projection matrix `A → A/I`. The quotient
/// basis is the images of the non-pivot basis vectors of `I`.
pub fn quotient(a: &Algebra, ideal: &Ideal) -> Result<(Algebra, Mat)> {
    let f = &a.field;
    let n = a.dim;
    let pivots = ideal.space.pivots();
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let d = keep.len();
    if d == 0 {
        return Err(Error::BadParams("quotient by the whole algebra".into()));
    }
    let project = |v: &[Scalar]| -> Vector {
        let r = ideal.space.reduce(f, v);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    let mut proj = Mat::zeros(f, d, n);
    for j in 0..n {
        for (i, x) in project(&a.basis_vec(j)).into_iter().enumerate() {
            proj.set(i, j, x);
        }
    }
    let mut t = Table::zeros(f, d);
    for (x, &i) in keep.iter().enumerate() {
        for (y, &j) in keep.iter().enumerate() {
            for (z, c) in project(&a.product_basis(i, j)).into_iter().enumerate() {
                t.set(x, y, z, c);
            }
        }
    }
    let unit = project(&a.unit);
    let names = keep.iter().map(|&i| format!("[{}]", a.basis_names[i])).collect();
    let q = Algebra::from_table_unchecked(f.clone(), t, unit, Some(names))?;
    Ok((q, proj))
}

/// Unital subalgebra generated by `gens`, as a canonical subspace.
pub fn generated_subalgebra(a: &Algebra, gens: &[Vector]) -> Subspace {
    let f = &a.field;
    let mut vecs = vec![a.unit.clone()];
    vecs.extend(gens.iter().cloned());
    let mut cur = Subspace::span(f, a.dim, &vecs);
    loop {
        let basis = cur.basis().to_vec();
        let mut more = basis.clone();
        for x in &basis {
            for y in &basis {
                more.push(a.mul(x, y));
            }
        }
        let next = Subspace::span(f, a.dim, &more);
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Structure constants of a unital subalgebra in its echelon basis, plus
/// the inclusion matrix (columns = basis vectors).
pub fn subalgebra(a: &Algebra, space: &Subspace) -> Result<(Algebra, Mat)> {
    let f = &a.field;
    if !space.contains(f, &a.unit) {
        return Err(Error::BadParams("subspace does not contain the unit".into()));
    }
    let basis = space.basis().to_vec();
    let d = basis.len();
    let mut t = Table::zeros(f, d);
    for (x, bx) in basis.iter().enumerate() {
        for (y, by) in basis.iter().enumerate() {
            let p = a.mul(bx, by);
            let c = space
                .coords(f, &p)
                .ok_or_else(|| Error::BadParams("subspace is not closed under multiplication".into()))?;
            for (z, cz) in c.into_iter().enumerate() {
                t.set(x, y, z, cz);
            }
        }
    }
    let unit = space.coords(f, &a.unit).expect("unit checked above");
    let sub = Algebra::from_table_unchecked(f.clone(), t, unit, None)?;
    Ok((sub, Mat::from_cols(a.dim, &basis)))
}

/// Checks that `m` (columns = images of source basis) is a unital algebra
/// homomorphism `source → target`.
pub fn check_homomorphism(source: &Algebra, target: &Algebra, m: &Mat) -> Result<()> {
    let f = &source.field;
    if m.rows() != target.dim || m.cols() != source.dim {
        return Err(Error::DimensionMismatch("homomorphism matrix shape".into()));
    }
    if m.mul_vec(f, &source.unit) != target.unit {
        return Err(Error::NotHomomorphism("unit is not preserved".into()));
    }
    for i in 0..source.dim {
        for j in 0..source.dim {
            let lhs = m.mul_vec(f, &source.product_basis(i, j));
            let rhs = target.mul(&m.col(i), &m.col(j));
            if lhs != rhs {
                return Err(Error::NotHomomorphism(format!("fails on basis pair ({i}, {j})")));
            }
        }
    }
    Ok(())
}

pub fn sum_of_vecs(f: &Field, vs: &[Vector], n: usize) -> Vector {
    vs.iter().fold(vec![f.zero(); n], |acc, v| vec_add(f, &acc, v))
}

pub type AlgebraRef = Arc<Algebra>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn base_field_as_algebra() {
        let f = f2();
        let mut t = Table::zeros(&f, 1);
        t.set(0, 0, 0, f.one());
        let a = make_algebra(f.clone(), t, vec![f.one()]).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a, base_field_algebra(&f));
    }

    #[test]
    fn dual_numbers() {
        let f = f2();
        let mut t = Table::zeros(&f, 2);
        t.set(0, 0, 0, f.one());
        t.set(0, 1, 1, f.one());
        t.set(1, 0, 1, f.one());
        let a = make_algebra(f.clone(), t, vec![f.one(), f.zero()]).unwrap();
        assert!(a.is_nilpotent_element(&a.basis_vec(1)));
        assert!(a.is_commutative());
    }

    #[test]
    fn non_associative_rejected() {
        let f = Field::Rationals;
        // e0 = 1, e1 e1 = e1, e1 e2 = e2, e2 e1 = 0, e2 e2 = e1 breaks (e2 e2) e2 vs e2 (e2 e2)
        let mut t = Table::zeros(&f, 3);
        for j in 0..3 {
            t.set(0, j, j, f.one());
            t.set(j, 0, j, f.one());
        }
        t.set(1, 1, 1, f.one());
        t.set(1, 2, 2, f.one());
        t.set(2, 2, 1, f.one());
        let err = make_algebra(f.clone(), t, vec![f.one(), f.zero(), f.zero()]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn bad_unit_rejected() {
        let f = f2();
        let mut t = Table::zeros(&f, 1);
        t.set(0, 0, 0, f.one());
        assert_eq!(make_algebra(f.clone(), t, vec![f.zero()]).unwrap_err(), Error::BadUnit(0));
    }

    #[test]
    fn matrix_units() {
        let f = Field::Rationals;
        let m = matrix_algebra(&f, 2);
        m.validate().unwrap();
        let (e11, e12) = (m.basis_vec(0), m.basis_vec(1));
        assert_eq!(m.mul(&e11, &e12), e12);
        assert!(is_zero_vec(&f, &m.mul(&e12, &e11)));
        assert_eq!(matrix_algebra(&f2(), 1), base_field_algebra(&f2()));
    }

    #[test]
    fn centers() {
        let q = Field::Rationals;
        assert_eq!(center(&matrix_algebra(&q, 2)).dim(), 1);
        let f3 = Field::prime(3).unwrap();
        let c = center(&matrix_algebra(&f3, 2));
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f3, matrix_algebra(&f3, 2).unit()));
        let g = group_algebra(&f3, &CayleyTable::cyclic(2));
        assert_eq!(center(&g).dim(), 2);
    }

    #[test]
    fn centralizer_of_diagonal_in_triangular() {
        let f = f2();
        let t2 = upper_triangular(&f, 2);
        // basis e11, e12, e22
        let gens = vec![t2.basis_vec(0), t2.basis_vec(2)];
        let c = centralizer(&t2, &gens);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&f, &t2.basis_vec(0)));
        assert!(c.contains(&f, &t2.basis_vec(2)));
    }

    #[test]
    fn constructions_validate_and_have_expected_dims() {
        let f = f2();
        let a = upper_triangular(&f, 2);
        let b = group_algebra(&f, &CayleyTable::cyclic(3));
        let s = direct_sum(&a, &b).unwrap();
        s.validate().unwrap();
        assert_eq!(s.dim(), 6);
        let t = tensor_over_field(&a, &b).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dim(), 9);
        assert_eq!(opposite(&opposite(&a)).table().data, a.table().data);
        enveloping(&a, &a).unwrap().validate().unwrap();
        diagonal(&f, 3).validate().unwrap();
        upper_triangular(&Field::Rationals, 3).validate().unwrap();
    }

    #[test]
    fn group_algebra_of_c2() {
        let f3 = Field::prime(3).unwrap();
        let a = group_algebra(&f3, &CayleyTable::cyclic(2));
        let g = a.basis_vec(1);
        assert_eq!(a.mul(&g, &g), *a.unit());
        assert!(a.is_commutative());
    }

    #[test]
    fn trivial_extensions() {
        let f = f2();
        let r = base_field_algebra(&f);
        let i = AdjoinedBimodule::regular(&r, false);
        let a = trivial_extension(&r, &i).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_nilpotent_element(&a.basis_vec(1)));

        let m2 = matrix_algebra(&f, 2);
        let pair = trivial_extension(&m2, &AdjoinedBimodule::regular(&m2, true)).unwrap();
        assert_eq!(pair.dim(), 8);

        let same = trivial_extension(&m2, &AdjoinedBimodule::zero()).unwrap();
        assert_eq!(same, m2);
    }

    #[test]
    fn sparse_and_dense_storage() {
        let f = f2();
        assert!(!matrix_algebra(&f, 3).is_dense());
        assert!(group_algebra(&f, &CayleyTable::cyclic(2)).is_dense());
    }

    #[test]
    fn quotient_of_triangular_by_radical() {
        let f = Field::Rationals;
        let t2 = upper_triangular(&f, 2);
        let rad = Ideal::from_subspace(&t2, Subspace::span(&f, 3, &[t2.basis_vec(1)])).unwrap();
        let (q, _) = quotient(&t2, &rad).unwrap();
        q.validate().unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_commutative());
    }

    #[test]
    fn subalgebra_round_trip() {
        let f = f2();
        let m2 = matrix_algebra(&f, 2);
        let t = generated_subalgebra(&m2, &[m2.basis_vec(1)]);
        assert_eq!(t.dim(), 2); // dual numbers
        let (s, inc) = subalgebra(&m2, &t).unwrap();
        s.validate().unwrap();
        check_homomorphism(&s, &m2, &inc).unwrap();
    }
}
