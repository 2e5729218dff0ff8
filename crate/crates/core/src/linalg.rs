//! Dense exact linear algebra over a [`Field`].
//!
//! Row reduction is fraction-free (Bareiss) over `Q`, word-sized modular
//! elimination over `F_p`, and plain Gauss–Jordan over `F_{p^k}`. Pivot
//! choice is always "first nonzero entry", so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{rational_to_bigint_row, Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Mat {
        let mut m = Mat { rows, cols: cols.len(), data: Vec::with_capacity(rows * cols.len()) };
        for i in 0..rows {
            for c in cols {
                m.data.push(c[i].clone());
            }
        }
        m
    }

    pub fn from_ints(f: &Field, rows: usize, cols: usize, vals: &[i64]) -> Mat {
        Mat::from_vec(rows, cols, vals.iter().map(|&v| f.from_int(v)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    /// Row-major flattening, used when matrices are themselves unknowns.
    pub fn to_vector(&self) -> Vector {
        self.data.clone()
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.mul_add(&out.data[idx], a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, f: &Field, other: &Mat) -> Mat {
        let mut out = Mat::zeros(f, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product, index `(i*p + k, j*q + l)`.
    pub fn kron(&self, f: &Field, other: &Mat) -> Mat {
        let (p, q) = (other.rows, other.cols);
        let mut out = Mat::zeros(f, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Linear combination `Σ c_i M_i` of equally shaped matrices.
    pub fn combination(f: &Field, coeffs: &[Scalar], mats: &[Mat]) -> Mat {
        assert_eq!(coeffs.len(), mats.len());
        assert!(!mats.is_empty());
        let mut out = Mat::zeros(f, mats[0].rows, mats[0].cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if f.is_zero(c) {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                *o = f.mul_add(o, c, x);
            }
        }
        out
    }
}

pub fn dot(f: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if f.is_zero(x) || f.is_zero(y) {
            continue;
        }
        acc = f.mul_add(&acc, x, y);
    }
    acc
}

pub fn vec_add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| f.mul(c, x)).collect()
}

pub fn is_zero_vec(f: &Field, a: &[Scalar]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn unit_vec(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

pub fn combine_vecs(f: &Field, coeffs: &[Scalar], vecs: &[Vector], len: usize) -> Vector {
    let mut out = vec![f.zero(); len];
    for (c, v) in coeffs.iter().zip(vecs) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = f.mul_add(o, c, x);
        }
    }
    out
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are moved to the bottom.
pub fn rref(f: &Field, m: &mut Mat) -> Vec<usize> {
    match f {
        Field::Rationals => rref_bareiss(m),
        Field::Prime(p) => rref_mod_p(*p, m),
        Field::Ext(_) => rref_naive(f, m),
    }
}

/// Textbook Gauss–Jordan elimination with field division at every step.
pub fn rref_naive(f: &Field, m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        swap_rows(m, r, piv);
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..cols {
                let t = f.mul(&factor, m.get(r, j));
                let v = f.sub(m.get(i, j), &t);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols;
    for j in 0..cols {
        m.data.swap(a * cols + j, b * cols + j);
    }
}

fn rref_mod_p(p: u32, m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let p64 = p as u64;
    let mut a: Vec<u32> = m
        .data
        .iter()
        .map(|x| match x {
            Scalar::Fp(v) => *v,
            _ => panic!("{}", Error::FieldMismatch),
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
        }
        let inv = inv_u32(a[r * cols + c], p) as u64;
        for j in c..cols {
            a[r * cols + j] = ((a[r * cols + j] as u64 * inv) % p64) as u32;
        }
        for i in 0..rows {
            let factor = a[i * cols + c] as u64;
            if i == r || factor == 0 {
                continue;
            }
            let neg = p64 - factor;
            for j in c..cols {
                let rv = a[r * cols + j] as u64;
                if rv != 0 {
                    let idx = i * cols + j;
                    a[idx] = ((a[idx] as u64 + neg * rv) % p64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for (slot, v) in m.data.iter_mut().zip(a) {
        *slot = Scalar::Fp(v);
    }
    pivots
}

fn inv_u32(x: u32, p: u32) -> u32 {
    let (mut a, mut b) = (x as i64, p as i64);
    let (mut u, mut v) = (1i64, 0i64);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (u, v) = (v, u - q * v);
    }
    u.rem_euclid(p as i64) as u32
}

/// Fraction-free Gauss–Jordan elimination (Bareiss): rows are scaled to
/// integers, every update `(piv·a_ij − a_ic·a_rj) / prev` divides exactly,
/// and the pivot rows are normalised to rationals only at the end.
fn rref_bareiss(m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|x| match x {
                    Scalar::Q(q) => (**q).clone(),
                    _ => panic!("{}", Error::FieldMismatch),
                })
                .collect();
            rational_to_bigint_row(&row)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let pv = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let aic = a[i][c].clone();
            for j in 0..cols {
                let num = &pv * &a[i][j] - &aic * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    for (i, row) in a.into_iter().enumerate() {
        let lead = pivots.get(i).map(|&c| row[c].clone());
        for (j, x) in row.into_iter().enumerate() {
            let q = match &lead {
                Some(d) => BigRational::new(x, d.clone()),
                None => BigRational::from_integer(x),
            };
            m.set(i, j, Scalar::Q(Box::new(q)));
        }
    }
    pivots
}

pub fn rank(f: &Field, m: &Mat) -> usize {
    let mut c = m.clone();
    rref(f, &mut c).len()
}

/// A particular solution and a basis of the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub nullspace: Vec<Vector>,
}

fn read_rref_solution(f: &Field, m: &Mat, pivots: &[usize], n: usize) -> Solution {
    let mut particular = vec![f.zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        if m.cols > n {
            particular[pc] = m.get(row, n).clone();
        }
    }
    let mut nullspace = Vec::new();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in pivots {
            v[p] = true;
        }
        v
    };
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m.get(row, free));
        }
        nullspace.push(v);
    }
    Solution { particular, nullspace }
}

/// Solves `A x = b`. Returns `None` iff `b` is outside the column space.
pub fn solve_linear(f: &Field, a: &Mat, b: &[Scalar]) -> Result<Option<Solution>> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    if a.data.iter().chain(b).any(|x| !f.contains(x)) {
        return Err(Error::FieldMismatch);
    }
    Ok(solve_unchecked(f, a, b))
}

pub(crate) fn solve_unchecked(f: &Field, a: &Mat, b: &[Scalar]) -> Option<Solution> {
    let n = a.cols;
    let mut aug = Mat::zeros(f, a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    Some(read_rref_solution(f, &aug, &pivots, n))
}

/// Same as [`solve_linear`] but eliminating with [`rref_naive`]; kept as an
/// independent route for cross-checking the fraction-free path.
pub fn solve_linear_naive(f: &Field, a: &Mat, b: &[Scalar]) -> Option<Solution> {
    let n = a.cols;
    let mut aug = Mat::zeros(f, a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let pivots = rref_naive(f, &mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    Some(read_rref_solution(f, &aug, &pivots, n))
}

pub fn nullspace(f: &Field, a: &Mat) -> Vec<Vector> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    read_rref_solution(f, &m, &pivots, a.cols).nullspace
}

pub fn det(f: &Field, a: &Mat) -> Scalar {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
            return f.zero();
        };
        if piv != c {
            swap_rows(&mut m, c, piv);
            d = f.neg(&d);
        }
        let pv = m.get(c, c).clone();
        d = f.mul(&d, &pv);
        let inv = f.inv(&pv).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = f.mul(m.get(i, c), &inv);
            for j in c..n {
                let t = f.mul(&factor, m.get(c, j));
                let v = f.sub(m.get(i, j), &t);
                m.set(i, j, v);
            }
        }
    }
    d
}

pub fn inverse(f: &Field, a: &Mat) -> Option<Mat> {
    let n = a.rows;
    if n != a.cols {
        return None;
    }
    let mut aug = Mat::zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// A subspace stored by its reduced row echelon basis, which is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(f: &Field, ambient: usize) -> Subspace {
        Subspace::span(f, ambient, &(0..ambient).map(|i| unit_vec(f, ambient, i)).collect::<Vec<_>>())
    }

    pub fn span(f: &Field, ambient: usize, vecs: &[Vector]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = Mat::from_rows(ambient, vecs);
        let pivots = rref(f, &mut m);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, f: &Field, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !f.is_zero(x) {
                    *o = f.sub(o, &f.mul(&c, x));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &Field, v: &[Scalar]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }

    /// Coordinates of a member of the subspace in the echelon basis.
    pub fn coords(&self, f: &Field, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(f, v))
    }

    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j
        let (du, dw) = (self.dim(), other.dim());
        if du == 0 || dw == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols: Vec<Vector> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.iter().map(|x| f.neg(x)).collect()));
        let a = Mat::from_cols(self.ambient, &cols);
        let ker = nullspace(f, &a);
        let vecs: Vec<Vector> = ker
            .iter()
            .map(|k| combine_vecs(f, &k[..du], &self.rows, self.ambient))
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(f, self.ambient, &v)
    }
}

/// Coordinates relative to an arbitrary (linearly independent) basis.
#[derive(Debug, Clone)]
pub struct Coordinates {
    basis: Vec<Vector>,
    echelon: Subspace,
    /// `transform[k]` expresses echelon row `k` in terms of `basis`.
    transform: Vec<Vector>,
}

impl Coordinates {
    pub fn new(f: &Field, ambient: usize, basis: Vec<Vector>) -> Coordinates {
        let d = basis.len();
        // rref of [B | I] tracks the row operations
        let mut m = Mat::zeros(f, d, ambient + d);
        for (i, b) in basis.iter().enumerate() {
            for j in 0..ambient {
                m.set(i, j, b[j].clone());
            }
            m.set(i, ambient + i, f.one());
        }
        let pivots = rref(f, &mut m);
        let rank = pivots.iter().take_while(|&&p| p < ambient).count();
        assert_eq!(rank, d, "coordinate basis must be linearly independent");
        let rows = (0..d).map(|i| m.row(i)[..ambient].to_vec()).collect();
        let transform = (0..d).map(|i| m.row(i)[ambient..].to_vec()).collect();
        Coordinates {
            basis,
            echelon: Subspace { ambient, rows, pivots: pivots[..d].to_vec() },
            transform,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, f: &Field, v: &[Scalar]) -> bool {
        self.echelon.contains(f, v)
    }

    pub fn coords(&self, f: &Field, v: &[Scalar]) -> Option<Vector> {
        let e = self.echelon.coords(f, v)?;
        let d = self.basis.len();
        let mut out = vec![f.zero(); d];
        for (k, ek) in e.iter().enumerate() {
            if f.is_zero(ek) {
                continue;
            }
            for i in 0..d {
                out[i] = f.mul_add(&out[i], ek, &self.transform[k][i]);
            }
        }
        Some(out)
    }

    pub fn combine(&self, f: &Field, c: &[Scalar]) -> Vector {
        combine_vecs(f, c, &self.basis, self.echelon.ambient)
    }
}

/// Incrementally grown echelon basis, for span-membership questions where
/// generating vectors arrive one at a time.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> EchelonBasis {
        EchelonBasis { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, f: &Field, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[pc]) {
                continue;
            }
            let c = out[pc].clone();
            for j in pc..self.ambient {
                if !f.is_zero(&row[j]) {
                    out[j] = f.sub(&out[j], &f.mul(&c, &row[j]));
                }
            }
        }
        out
    }

    /// Adds `v`; returns `true` if it was independent of the current span.
    pub fn to_subspace(&self, f: &Field) -> Subspace {
        Subspace::span(f, self.ambient, &self.rows)
    }

    pub fn insert(&mut self, f: &Field, v: &[Scalar]) -> bool {
        let r = self.reduce(f, v);
        let Some(pc) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[pc]).expect("nonzero");
        let r: Vector = r.iter().map(|x| f.mul(x, &inv)).collect();
        // keep rows sorted by pivot so reduction is a single pass
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, pc);
        true
    }

    pub fn contains(&self, f: &Field, v: &[Scalar]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Scalar {
        Field::Rationals.from_rational(parse_rational(s).unwrap()).unwrap()
    }

    #[test]
    fn identity_system_over_f2() {
        let f = Field::prime(2).unwrap();
        let a = Mat::identity(&f, 2);
        let s = solve_linear(&f, &a, &[f.one(), f.zero()]).unwrap().unwrap();
        assert_eq!(s.particular, vec![f.one(), f.zero()]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn underdetermined_over_f2() {
        let f = Field::prime(2).unwrap();
        let a = Mat::from_ints(&f, 1, 2, &[1, 1]);
        let s = solve_linear(&f, &a, &[f.one()]).unwrap().unwrap();
        assert_eq!(s.particular, vec![f.one(), f.zero()]);
        assert_eq!(s.nullspace, vec![vec![f.one(), f.one()]]);
    }

    #[test]
    fn inconsistent_over_q() {
        let f = Field::Rationals;
        let a = Mat::from_ints(&f, 2, 2, &[2, 4, 1, 2]);
        assert_eq!(solve_linear(&f, &a, &[f.one(), f.one()]).unwrap(), None);
    }

    #[test]
    fn shape_and_field_errors() {
        let f = Field::Rationals;
        let a = Mat::identity(&f, 2);
        assert!(matches!(solve_linear(&f, &a, &[f.one()]), Err(Error::DimensionMismatch(_))));
        let f2 = Field::prime(2).unwrap();
        assert_eq!(solve_linear(&f2, &a, &[f.one(), f.one()]), Err(Error::FieldMismatch));
    }

    #[test]
    fn bareiss_handles_fractions() {
        let f = Field::Rationals;
        let a = Mat::from_vec(2, 2, vec![q("1/2"), q("1/3"), q("1/4"), q("1/5")]);
        let b = vec![q("1"), q("2")];
        let s = solve_linear(&f, &a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&f, &s.particular), b);
    }

    fn random_q_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
        let f = Field::Rationals;
        let data = (0..rows * cols)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    f.zero()
                } else {
                    let n: i64 = rng.gen_range(-9..=9);
                    let d: i64 = rng.gen_range(1..=5);
                    q(&format!("{n}/{d}"))
                }
            })
            .collect();
        Mat::from_vec(rows, cols, data)
    }

    #[test]
    fn bareiss_agrees_with_naive_elimination_on_random_6x6() {
        let f = Field::Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..60 {
            // force some rank deficiency in a third of the trials
            let mut a = random_q_matrix(&mut rng, 6, 6);
            if trial % 3 == 0 {
                for j in 0..6 {
                    let v = f.add(a.get(0, j), a.get(1, j));
                    a.set(5, j, v);
                }
            }
            let b: Vector = (0..6).map(|_| q(&rng.gen_range(-5..=5i64).to_string())).collect();
            let fast = solve_linear(&f, &a, &b).unwrap();
            let slow = solve_linear_naive(&f, &a, &b);
            assert_eq!(fast, slow, "trial {trial}");
            if let Some(s) = fast {
                assert_eq!(a.mul_vec(&f, &s.particular), b);
                for k in &s.nullspace {
                    assert!(is_zero_vec(&f, &a.mul_vec(&f, k)));
                }
                assert_eq!(rank(&f, &a) + s.nullspace.len(), 6);
            }
        }
    }

    #[test]
    fn det_and_inverse() {
        let f = Field::prime(5).unwrap();
        let a = Mat::from_ints(&f, 2, 2, &[1, 2, 3, 4]);
        assert_eq!(det(&f, &a), f.from_int(-2));
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(a.mul(&f, &inv), Mat::identity(&f, 2));
        let s = Mat::from_ints(&f, 2, 2, &[1, 2, 2, 4]);
        assert!(inverse(&f, &s).is_none());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::prime(3).unwrap();
        let basis = vec![
            vec![f.from_int(1), f.from_int(2), f.from_int(0)],
            vec![f.from_int(0), f.from_int(1), f.from_int(1)],
        ];
        let c = Coordinates::new(&f, 3, basis);
        let v = c.combine(&f, &[f.from_int(2), f.from_int(1)]);
        assert_eq!(c.coords(&f, &v).unwrap(), vec![f.from_int(2), f.from_int(1)]);
        assert!(c.coords(&f, &unit_vec(&f, 3, 2)).is_none());
    }

    #[test]
    fn echelon_basis_membership() {
        let f = Field::prime(2).unwrap();
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&f, &[f.one(), f.one(), f.zero()]));
        assert!(e.insert(&f, &[f.zero(), f.one(), f.one()]));
        assert!(!e.insert(&f, &[f.one(), f.zero(), f.one()]));
        assert!(e.contains(&f, &[f.one(), f.zero(), f.one()]));
        assert!(!e.contains(&f, &[f.one(), f.zero(), f.zero()]));
    }

    #[test]
    fn subspace_intersection() {
        let f = Field::Rationals;
        let u = Subspace::span(&f, 3, &[unit_vec(&f, 3, 0), unit_vec(&f, 3, 1)]);
        let w = Subspace::span(&f, 3, &[unit_vec(&f, 3, 1), unit_vec(&f, 3, 2)]);
        let i = u.intersect(&f, &w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&f, &unit_vec(&f, 3, 1)));
    }
}
