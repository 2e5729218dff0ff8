//! Extensions, bimodules, hom spaces, duals, tensor products and the
//! add-summand test.
//!
//! Conventions: module elements are column vectors. A left action is stored
//! as `L(t)` with `t·m = L(t) m`; a right action as `ρ(r)` with
//! `m·r = ρ(r) m`, so `ρ(rr') = ρ(r') ρ(r)`. A one-sided module is a
//! bimodule whose other algebra is the base field. Linear maps `M → N` are
//! `dim N × dim M` matrices.

use std::sync::Arc;

use crate::algebra::{
    base_field_algebra, check_homomorphism, group_algebra, matrix_algebra, subalgebra, trivial_extension, AdjoinedBimodule,
    Algebra,
};
use crate::group::CayleyTable;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{
    combine_vecs, is_zero_vec, nullspace, rank, solve_unchecked, unit_vec, Coordinates, EchelonBasis, Mat,
    Subspace, Vector,
};

// ---------------------------------------------------------------------------
// extensions

#[derive(Debug, Clone)]
pub struct Extension {
    s: Arc<Algebra>,
    r: Arc<Algebra>,
    iota: Mat,
    proper: bool,
}

impl Extension {
    /// `iota` has `dim R` rows and `dim S` columns; column `j` is `ι(s_j)`.
    pub fn new(s: Arc<Algebra>, r: Arc<Algebra>, iota: Mat) -> Result<Extension> {
        if s.field() != r.field() {
            return Err(Error::FieldMismatch);
        }
        check_homomorphism(&s, &r, &iota)?;
        let proper = rank(s.field(), &iota) == s.dim();
        Ok(Extension { s, r, iota, proper })
    }

    pub fn identity(a: Arc<Algebra>) -> Extension {
        let iota = Mat::identity(a.field(), a.dim());
        Extension { s: a.clone(), r: a, iota, proper: true }
    }

    /// `k·1 ⊆ R`.
    pub fn over_base_field(r: Arc<Algebra>) -> Extension {
        let f = r.field().clone();
        let s = Arc::new(base_field_algebra(&f));
        let iota = Mat::from_cols(r.dim(), &[r.unit().clone()]);
        Extension { s, r, iota, proper: true }
    }

    pub fn s(&self) -> &Arc<Algebra> {
        &self.s
    }

    pub fn r(&self) -> &Arc<Algebra> {
        &self.r
    }

    pub fn iota(&self) -> &Mat {
        &self.iota
    }

    pub fn field(&self) -> &Field {
        self.r.field()
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_bijective(&self) -> bool {
        self.proper && self.s.dim() == self.r.dim()
    }

    pub fn image(&self, s: &[Scalar]) -> Vector {
        self.iota.mul_vec(self.field(), s)
    }

    pub fn image_basis(&self, j: usize) -> Vector {
        self.iota.col(j)
    }

    /// Left multiplication matrices on `R` by `ι(s_j)`.
    pub fn left_s_ops(&self) -> Vec<Mat> {
        (0..self.s.dim()).map(|j| self.r.left_mul_matrix(&self.image_basis(j))).collect()
    }

    /// Right multiplication matrices on `R` by `ι(s_j)`.
    pub fn right_s_ops(&self) -> Vec<Mat> {
        (0..self.s.dim()).map(|j| self.r.right_mul_matrix(&self.image_basis(j))).collect()
    }
}

/// `k[H] ⊆ k[G]` for a subgroup `H` given by element indices of `G`.
pub fn group_extension(f: &Field, g: &CayleyTable, h: &[usize]) -> Result<Extension> {
    let (sub, elems) = g.subgroup_table(h)?;
    let s = Arc::new(group_algebra(f, &sub));
    let r = Arc::new(group_algebra(f, g));
    let cols: Vec<Vector> = elems.iter().map(|&x| unit_vec(f, g.order(), x)).collect();
    Extension::new(s, r, Mat::from_cols(g.order(), &cols))
}

/// `S ⊆ R` for a unital subalgebra given as a subspace of `R`.
pub fn subalgebra_extension(r: Arc<Algebra>, space: &Subspace) -> Result<Extension> {
    let (sub, incl) = subalgebra(&r, space)?;
    Extension::new(Arc::new(sub), r, incl)
}

/// `S ⊕ I ⊆ R ⊕ I` for an `R`-bimodule `I` with multiplication; `I` is an
/// `S`-bimodule by restriction along `ι`.
pub fn trivial_extension_pair(ext: &Extension, i: &AdjoinedBimodule) -> Result<Extension> {
    let f = ext.field();
    let a = Arc::new(trivial_extension(ext.r(), i)?);
    let restrict = |ops: &[Mat]| -> Vec<Mat> {
        (0..ext.s().dim())
            .map(|j| {
                let c = ext.image_basis(j);
                Mat::combination(f, &c, ops)
            })
            .collect()
    };
    let i_s = if i.dim == 0 {
        AdjoinedBimodule::zero()
    } else {
        AdjoinedBimodule { dim: i.dim, left: restrict(&i.left), right: restrict(&i.right), product: i.product.clone() }
    };
    let t = Arc::new(trivial_extension(ext.s(), &i_s)?);
    let iota = ext.iota().direct_sum(f, &Mat::identity(f, i.dim));
    Extension::new(t, a, iota)
}

/// `k^n` (columns) as an `(M_n(k), k)`-bimodule, the standard Morita
/// equivalence bimodule.
pub fn morita_bimodule(f: &Field, n: usize) -> Bimodule {
    let t = Arc::new(matrix_algebra(f, n));
    let k = Arc::new(base_field_algebra(f));
    let left = (0..n * n)
        .map(|e| {
            // e_ij sends unit vector j to unit vector i
            let (i, j) = (e / n, e % n);
            let mut m = Mat::zeros(f, n, n);
            m.set(i, j, f.one());
            m
        })
        .collect();
    Bimodule::new(t, k, n, left, vec![Mat::identity(f, n)]).expect("column module is a bimodule")
}

// ---------------------------------------------------------------------------
// bimodules

#[derive(Debug, Clone)]
pub struct Bimodule {
    left_alg: Arc<Algebra>,
    right_alg: Arc<Algebra>,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Bimodule {
    /// Validated constructor: `left[i]` acts by the `i`-th basis element of
    /// the left algebra, `right[j]` by the `j`-th basis element of the right.
    pub fn new(left_alg: Arc<Algebra>, right_alg: Arc<Algebra>, dim: usize, left: Vec<Mat>, right: Vec<Mat>) -> Result<Bimodule> {
        let m = Bimodule::new_unchecked(left_alg, right_alg, dim, left, right)?;
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        left_alg: Arc<Algebra>,
        right_alg: Arc<Algebra>,
        dim: usize,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Bimodule> {
        if left_alg.field() != right_alg.field() {
            return Err(Error::FieldMismatch);
        }
        if left.len() != left_alg.dim() || right.len() != right_alg.dim() {
            return Err(Error::BadBimodule("one action matrix per basis element is required".into()));
        }
        if left.iter().chain(&right).any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::BadBimodule(format!("action matrices must be {dim}×{dim}")));
        }
        Ok(Bimodule { left_alg, right_alg, dim, left, right })
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.field().clone();
        let id = Mat::identity(&f, self.dim);
        let t = &self.left_alg;
        let r = &self.right_alg;
        if self.left_action(t.unit()) != id {
            return Err(Error::BadBimodule("left unit does not act as the identity".into()));
        }
        if self.right_action(r.unit()) != id {
            return Err(Error::BadBimodule("right unit does not act as the identity".into()));
        }
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                if self.left[i].mul(&f, &self.left[j]) != self.left_action(&t.product_basis(i, j)) {
                    return Err(Error::BadBimodule(format!("left action fails on basis pair ({i}, {j})")));
                }
            }
        }
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                if self.right[j].mul(&f, &self.right[i]) != self.right_action(&r.product_basis(i, j)) {
                    return Err(Error::BadBimodule(format!("right action fails on basis pair ({i}, {j})")));
                }
            }
        }
        for (i, l) in self.left.iter().enumerate() {
            for (j, rr) in self.right.iter().enumerate() {
                if l.mul(&f, rr) != rr.mul(&f, l) {
                    return Err(Error::BadBimodule(format!("actions of left {i} and right {j} do not commute")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        self.left_alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_alg(&self) -> &Arc<Algebra> {
        &self.left_alg
    }

    pub fn right_alg(&self) -> &Arc<Algebra> {
        &self.right_alg
    }

    pub fn left_ops(&self) -> &[Mat] {
        &self.left
    }

    pub fn right_ops(&self) -> &[Mat] {
        &self.right
    }

    pub fn left_action(&self, t: &[Scalar]) -> Mat {
        if self.dim == 0 {
            return Mat::zeros(self.field(), 0, 0);
        }
        Mat::combination(self.field(), t, &self.left)
    }

    pub fn right_action(&self, r: &[Scalar]) -> Mat {
        if self.dim == 0 {
            return Mat::zeros(self.field(), 0, 0);
        }
        Mat::combination(self.field(), r, &self.right)
    }

    pub fn act_left(&self, t: &[Scalar], m: &[Scalar]) -> Vector {
        self.left_action(t).mul_vec(self.field(), m)
    }

    pub fn act_right(&self, m: &[Scalar], r: &[Scalar]) -> Vector {
        self.right_action(r).mul_vec(self.field(), m)
    }

    /// Regular bimodule `_A A_A`.
    pub fn regular(a: Arc<Algebra>) -> Bimodule {
        let left = a.left_ops().to_vec();
        let right = a.right_ops().to_vec();
        Bimodule { left_alg: a.clone(), right_alg: a.clone(), dim: a.dim(), left, right }
    }

    /// Right regular module `A_A`.
    pub fn right_regular(a: Arc<Algebra>) -> Bimodule {
        Bimodule::regular(a).forget_left()
    }

    /// Left regular module `_A A`.
    pub fn left_regular(a: Arc<Algebra>) -> Bimodule {
        Bimodule::regular(a).forget_right()
    }

    /// Restricts the left action along an algebra map `φ: S → T`
    /// (`phi` has columns `φ(s_j)`).
    pub fn restrict_left(&self, s: Arc<Algebra>, phi: &Mat) -> Bimodule {
        let left = (0..s.dim()).map(|j| self.left_action(&phi.col(j))).collect();
        Bimodule { left_alg: s, right_alg: self.right_alg.clone(), dim: self.dim, left, right: self.right.clone() }
    }

    pub fn restrict_right(&self, s: Arc<Algebra>, phi: &Mat) -> Bimodule {
        let right = (0..s.dim()).map(|j| self.right_action(&phi.col(j))).collect();
        Bimodule { left_alg: self.left_alg.clone(), right_alg: s, dim: self.dim, left: self.left.clone(), right }
    }

    pub fn forget_left(&self) -> Bimodule {
        let k = Arc::new(base_field_algebra(self.field()));
        let left = vec![Mat::identity(self.field(), self.dim)];
        Bimodule { left_alg: k, right_alg: self.right_alg.clone(), dim: self.dim, left, right: self.right.clone() }
    }

    pub fn forget_right(&self) -> Bimodule {
        let k = Arc::new(base_field_algebra(self.field()));
        let right = vec![Mat::identity(self.field(), self.dim)];
        Bimodule { left_alg: self.left_alg.clone(), right_alg: k, dim: self.dim, left: self.left.clone(), right }
    }

    pub fn is_left_trivial(&self) -> bool {
        self.left_alg.dim() == 1
    }

    pub fn is_right_trivial(&self) -> bool {
        self.right_alg.dim() == 1
    }

    /// `⊕ⁿ M`.
    pub fn power(&self, n: usize) -> Bimodule {
        let f = self.field().clone();
        let rep = |ops: &[Mat]| -> Vec<Mat> {
            ops.iter()
                .map(|a| (1..n).fold(a.clone(), |acc, _| acc.direct_sum(&f, a)))
                .collect()
        };
        Bimodule {
            left_alg: self.left_alg.clone(),
            right_alg: self.right_alg.clone(),
            dim: self.dim * n,
            left: rep(&self.left),
            right: rep(&self.right),
        }
    }

    /// Same actions with the left action twisted by an automorphism `β`:
    /// `t ⋆ m = β(t) m`.
    pub fn twist_left(&self, beta: &Mat) -> Bimodule {
        let t = self.left_alg.clone();
        self.restrict_left(t, beta)
    }

    /// Submodule spanned by the given vectors, provided it is closed.
    pub fn submodule(&self, vecs: &[Vector]) -> Result<Bimodule> {
        let f = self.field().clone();
        let sub = Subspace::span(&f, self.dim, vecs);
        let coords = Coordinates::new(&f, self.dim, sub.basis().to_vec());
        let restrict = |a: &Mat| -> Result<Mat> {
            let cols = coords
                .basis()
                .iter()
                .map(|b| coords.coords(&f, &a.mul_vec(&f, b)).ok_or_else(|| Error::BadBimodule("subspace is not a submodule".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::from_cols(sub.dim(), &cols))
        };
        let left = self.left.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), dim: sub.dim(), left, right })
    }

    /// Quotient by the submodule spanned by `vecs`; basis = non-pivot
    /// coordinates of the submodule's echelon basis.
    pub fn quotient(&self, vecs: &[Vector]) -> Result<Bimodule> {
        let f = self.field().clone();
        let sub = Subspace::span(&f, self.dim, vecs);
        let keep: Vec<usize> = (0..self.dim).filter(|i| !sub.pivots().contains(i)).collect();
        let act = |a: &Mat| -> Result<Mat> {
            let mut out = Mat::zeros(&f, keep.len(), keep.len());
            for b in sub.basis() {
                if !sub.contains(&f, &a.mul_vec(&f, b)) {
                    return Err(Error::BadBimodule("subspace is not a submodule".into()));
                }
            }
            for (c, &j) in keep.iter().enumerate() {
                let img = sub.reduce(&f, &a.col(j));
                for (r, &i) in keep.iter().enumerate() {
                    out.set(r, c, img[i].clone());
                }
            }
            Ok(out)
        };
        let left = self.left.iter().map(act).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(act).collect::<Result<Vec<_>>>()?;
        Ok(Bimodule { left_alg: self.left_alg.clone(), right_alg: self.right_alg.clone(), dim: keep.len(), left, right })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Pattern {
    /// `_S R_S`
    SRS,
    /// `_R R_S`
    RRS,
    /// `_S R_R`
    SRR,
    /// `_R R_R`
    RRR,
    /// `_S S_S`
    SSS,
}

pub fn natural_bimodule(ext: &Extension, pattern: Pattern) -> Bimodule {
    let r = ext.r().clone();
    let s = ext.s().clone();
    let reg = Bimodule::regular(r.clone());
    match pattern {
        Pattern::RRR => reg,
        Pattern::RRS => reg.restrict_right(s, ext.iota()),
        Pattern::SRR => reg.restrict_left(s, ext.iota()),
        Pattern::SRS => reg.restrict_left(s.clone(), ext.iota()).restrict_right(s, ext.iota()),
        Pattern::SSS => Bimodule::regular(s),
    }
}

// ---------------------------------------------------------------------------
// hom spaces

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// maps commuting with the right action only
    Right,
    /// maps commuting with the left action only
    Left,
    /// bimodule maps
    Both,
}

#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combine(&self, f: &Field, c: &[Scalar]) -> Mat {
        if self.basis.is_empty() {
            return Mat::zeros(f, self.target_dim, self.source_dim);
        }
        Mat::combination(f, c, &self.basis)
    }

    /// Coordinates of arbitrary maps relative to this basis.
    pub fn coordinates(&self, f: &Field) -> Coordinates {
        let vecs = self.basis.iter().map(|m| m.to_vector()).collect();
        Coordinates::new(f, self.source_dim * self.target_dim, vecs)
    }
}

/// Pairs of operators `(A on M, B on N)` with which a hom `F` must satisfy
/// `F A = B F`.
fn equivariance_pairs<'a>(m: &'a Bimodule, n: &'a Bimodule, side: Side) -> Result<Vec<(&'a Mat, &'a Mat)>> {
    let mut pairs = Vec::new();
    if matches!(side, Side::Left | Side::Both) {
        if !same_algebra(&m.left_alg, &n.left_alg) {
            return Err(Error::AlgebraMismatch);
        }
        if !m.is_left_trivial() {
            pairs.extend(m.left.iter().zip(&n.left));
        }
    }
    if matches!(side, Side::Right | Side::Both) {
        if !same_algebra(&m.right_alg, &n.right_alg) {
            return Err(Error::AlgebraMismatch);
        }
        if !m.is_right_trivial() {
            pairs.extend(m.right.iter().zip(&n.right));
        }
    }
    Ok(pairs)
}

/// Solves `F A_i = B_i F` for all pairs; `F` is `q × p`.
pub fn intertwiners(f: &Field, p: usize, q: usize, pairs: &[(&Mat, &Mat)]) -> Vec<Mat> {
    let unknowns = p * q;
    if unknowns == 0 {
        return Vec::new();
    }
    if pairs.is_empty() {
        return (0..unknowns).map(|i| Mat::from_vec(q, p, unit_vec(f, unknowns, i))).collect();
    }
    let mut rows: Vec<Vector> = Vec::with_capacity(pairs.len() * unknowns);
    for (a, b) in pairs {
        // (F A − B F)[x][c] = Σ_y F[x][y] A[y][c] − Σ_d B[x][d] F[d][c]
        for x in 0..q {
            for c in 0..p {
                let mut row = vec![f.zero(); unknowns];
                for y in 0..p {
                    let v = a.get(y, c);
                    if !f.is_zero(v) {
                        row[x * p + y] = f.add(&row[x * p + y], v);
                    }
                }
                for d in 0..q {
                    let v = b.get(x, d);
                    if !f.is_zero(v) {
                        row[d * p + c] = f.sub(&row[d * p + c], v);
                    }
                }
                if !is_zero_vec(f, &row) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return (0..unknowns).map(|i| Mat::from_vec(q, p, unit_vec(f, unknowns, i))).collect();
    }
    nullspace(f, &Mat::from_rows(unknowns, &rows))
        .into_iter()
        .map(|v| Mat::from_vec(q, p, v))
        .collect()
}

pub fn hom_space(m: &Bimodule, n: &Bimodule, side: Side) -> Result<HomSpace> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch);
    }
    let pairs = equivariance_pairs(m, n, side)?;
    let basis = intertwiners(m.field(), m.dim, n.dim, &pairs);
    Ok(HomSpace { source_dim: m.dim, target_dim: n.dim, basis })
}

/// Independent re-check of the equivariance equations.
pub fn is_hom(m: &Bimodule, n: &Bimodule, side: Side, map: &Mat) -> bool {
    let f = m.field();
    match equivariance_pairs(m, n, side) {
        Ok(pairs) => {
            map.rows() == n.dim
                && map.cols() == m.dim
                && pairs.iter().all(|(a, b)| map.mul(f, a) == b.mul(f, map))
        }
        Err(_) => false,
    }
}

/// Matrices of the actions on a space of maps, expressed in a basis.
fn induced_ops(f: &Field, coords: &Coordinates, rows: usize, cols: usize, count: usize, op: impl Fn(usize, &Mat) -> Mat) -> Vec<Mat> {
    let d = coords.dim();
    (0..count)
        .map(|i| {
            let images: Vec<Vector> = coords
                .basis()
                .iter()
                .map(|b| {
                    let m = Mat::from_vec(rows, cols, b.clone());
                    coords.coords(f, &op(i, &m).to_vector()).expect("action preserves the hom space")
                })
                .collect();
            if d == 0 {
                Mat::zeros(f, 0, 0)
            } else {
                Mat::from_cols(d, &images)
            }
        })
        .collect()
}

/// A dual bimodule together with the basis of maps it is built on.
#[derive(Debug, Clone)]
pub struct Dual {
    pub module: Bimodule,
    pub maps: HomSpace,
    pub coords: Coordinates,
}

impl Dual {
    pub fn map_of(&self, v: &[Scalar]) -> Mat {
        self.maps.combine(self.module.field(), v)
    }

    pub fn coords_of(&self, map: &Mat) -> Option<Vector> {
        self.coords.coords(self.module.field(), &map.to_vector())
    }
}

/// `M* = Hom(M_R, R_R)` for a `(T,R)`-bimodule `M`, as an `(R,T)`-bimodule:
/// `(r·f)(m) = r f(m)`, `(f·t)(m) = f(t m)`.
pub fn dual_right(m: &Bimodule) -> Dual {
    let f = m.field().clone();
    let r = m.right_alg.clone();
    let rr = Bimodule::right_regular(r.clone());
    let pairs: Vec<(&Mat, &Mat)> = if m.is_right_trivial() { Vec::new() } else { m.right.iter().zip(&rr.right).collect() };
    let basis = intertwiners(&f, m.dim, r.dim(), &pairs);
    let maps = HomSpace { source_dim: m.dim, target_dim: r.dim(), basis };
    let coords = maps.coordinates(&f);
    let (rows, cols) = (r.dim(), m.dim);
    let lops = r.left_ops();
    let left = induced_ops(&f, &coords, rows, cols, r.dim(), |i, x| lops[i].mul(&f, x));
    let right = induced_ops(&f, &coords, rows, cols, m.left_alg.dim(), |i, x| x.mul(&f, &m.left[i]));
    let module = Bimodule { left_alg: r, right_alg: m.left_alg.clone(), dim: coords.dim(), left, right };
    Dual { module, maps, coords }
}

/// `*M = Hom(_T M, _T T)` for a `(T,R)`-bimodule `M`, as an
/// `(R,T)`-bimodule: `(r·f)(m) = f(m r)`, `(f·t)(m) = f(m) t`.
pub fn dual_left(m: &Bimodule) -> Dual {
    let f = m.field().clone();
    let t = m.left_alg.clone();
    let tt = Bimodule::left_regular(t.clone());
    let pairs: Vec<(&Mat, &Mat)> = if m.is_left_trivial() { Vec::new() } else { m.left.iter().zip(&tt.left).collect() };
    let basis = intertwiners(&f, m.dim, t.dim(), &pairs);
    let maps = HomSpace { source_dim: m.dim, target_dim: t.dim(), basis };
    let coords = maps.coordinates(&f);
    let (rows, cols) = (t.dim(), m.dim);
    let rops = t.right_ops();
    let left = induced_ops(&f, &coords, rows, cols, m.right_alg.dim(), |i, x| x.mul(&f, &m.right[i]));
    let right = induced_ops(&f, &coords, rows, cols, t.dim(), |i, x| rops[i].mul(&f, x));
    let module = Bimodule { left_alg: m.right_alg.clone(), right_alg: t, dim: coords.dim(), left, right };
    Dual { module, maps, coords }
}

/// Evaluation `M → *(M*)`, `m ↦ (f ↦ f(m))`, as a matrix.
pub fn double_dual_map(m: &Bimodule) -> (Dual, Dual, Mat) {
    let f = m.field().clone();
    let d1 = dual_right(m);
    let d2 = dual_left(&d1.module);
    let cols: Vec<Vector> = (0..m.dim)
        .map(|a| {
            let e = unit_vec(&f, m.dim, a);
            let evals: Vec<Vector> = d1.maps.basis.iter().map(|fb| fb.mul_vec(&f, &e)).collect();
            let g = if evals.is_empty() {
                Mat::zeros(&f, m.right_alg.dim(), 0)
            } else {
                Mat::from_cols(m.right_alg.dim(), &evals)
            };
            d2.coords_of(&g).expect("evaluation is left linear")
        })
        .collect();
    let map = if cols.is_empty() { Mat::zeros(&f, d2.module.dim, 0) } else { Mat::from_cols(d2.module.dim, &cols) };
    (d1, d2, map)
}

/// `End(M_R)` for a `(T,R)`-bimodule `M`, as a `(T,T)`-bimodule:
/// `t·φ = L_t ∘ φ`, `φ·t = φ ∘ L_t`.
pub fn end_right(m: &Bimodule) -> Dual {
    let f = m.field().clone();
    let pairs: Vec<(&Mat, &Mat)> = if m.is_right_trivial() { Vec::new() } else { m.right.iter().zip(&m.right).collect() };
    end_module(m, pairs, m.left_alg.clone(), |i, x| m.left[i].mul(&f, x), |i, x| x.mul(&f, &m.left[i]))
}

/// `End(_T M)` for a `(T,R)`-bimodule `M`, as an `(R,R)`-bimodule:
/// `r·φ = φ ∘ ρ(r)`, `φ·r = ρ(r) ∘ φ`.
pub fn end_left(m: &Bimodule) -> Dual {
    let f = m.field().clone();
    let pairs: Vec<(&Mat, &Mat)> = if m.is_left_trivial() { Vec::new() } else { m.left.iter().zip(&m.left).collect() };
    end_module(m, pairs, m.right_alg.clone(), |i, x| x.mul(&f, &m.right[i]), |i, x| m.right[i].mul(&f, x))
}

fn end_module(
    m: &Bimodule,
    pairs: Vec<(&Mat, &Mat)>,
    alg: Arc<Algebra>,
    left_op: impl Fn(usize, &Mat) -> Mat,
    right_op: impl Fn(usize, &Mat) -> Mat,
) -> Dual {
    let f = m.field().clone();
    let basis = intertwiners(&f, m.dim, m.dim, &pairs);
    let maps = HomSpace { source_dim: m.dim, target_dim: m.dim, basis };
    let coords = maps.coordinates(&f);
    let left = induced_ops(&f, &coords, m.dim, m.dim, alg.dim(), left_op);
    let right = induced_ops(&f, &coords, m.dim, m.dim, alg.dim(), right_op);
    let module = Bimodule { left_alg: alg.clone(), right_alg: alg, dim: coords.dim(), left, right };
    Dual { module, maps, coords }
}

/// Relations `m r ⊗ n − m ⊗ r n` spanning the kernel of `M ⊗_k N → M ⊗_R N`,
/// built directly from the actions.
pub fn balanced_relations(m: &Bimodule, n: &Bimodule) -> Subspace {
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let mut rels = Vec::new();
    if !m.is_right_trivial() {
        for (rho, lam) in m.right.iter().zip(&n.left) {
            for a in 0..dm {
                let mr = rho.col(a);
                for b in 0..dn {
                    let rn = lam.col(b);
                    let x = raw_tensor(f, &[(mr.clone(), unit_vec(f, dn, b))], dm, dn);
                    let y = raw_tensor(f, &[(unit_vec(f, dm, a), rn)], dm, dn);
                    rels.push(crate::linalg::vec_sub(f, &x, &y));
                }
            }
        }
    }
    Subspace::span(f, dm * dn, &rels)
}

// ---------------------------------------------------------------------------
// tensor products

/// `M ⊗_S N` for an `(A,S)`-bimodule `M` and an `(S,B)`-bimodule `N`.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub module: Bimodule,
    pub relations: Subspace,
    keep: Vec<usize>,
    dim_m: usize,
    dim_n: usize,
}

impl Tensor {
    /// Quotient coordinates of a vector in `M ⊗_k N` (index `m*dim N + n`).
    pub fn project(&self, f: &Field, v: &[Scalar]) -> Vector {
        let r = self.relations.reduce(f, v);
        self.keep.iter().map(|&i| r[i].clone()).collect()
    }

    /// A representative in `M ⊗_k N` of a quotient vector.
    pub fn section(&self, f: &Field, q: &[Scalar]) -> Vector {
        let mut v = vec![f.zero(); self.dim_m * self.dim_n];
        for (c, &i) in self.keep.iter().enumerate() {
            v[i] = q[c].clone();
        }
        v
    }

    pub fn pair(&self, f: &Field, m: &[Scalar], n: &[Scalar]) -> Vector {
        let mut v = Vec::with_capacity(self.dim_m * self.dim_n);
        for x in m {
            for y in n {
                v.push(f.mul(x, y));
            }
        }
        self.project(f, &v)
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_m, self.dim_n)
    }

    /// Applies a linear functional `φ` on `M ⊗_k N` given on pure basis
    /// tensors to the quotient: `φ(m_a ⊗ n_b) = value(a, b)` (must vanish on
    /// the relations).
    pub fn descend(&self, f: &Field, out_dim: usize, value: impl Fn(usize, usize) -> Vector) -> Mat {
        let cols: Vec<Vector> = self
            .keep
            .iter()
            .map(|&i| value(i / self.dim_n, i % self.dim_n))
            .collect();
        if cols.is_empty() {
            Mat::zeros(f, out_dim, 0)
        } else {
            Mat::from_cols(out_dim, &cols)
        }
    }
}

pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<Tensor> {
    if !same_algebra(&m.right_alg, &n.left_alg) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field().clone();
    let (dm, dn) = (m.dim, n.dim);
    let total = dm * dn;
    let mut rels = EchelonBasis::new(total);
    if !m.is_right_trivial() {
        for s in 0..m.right_alg.dim() {
            let (rs, ls) = (&m.right[s], &n.left[s]);
            for a in 0..dm {
                for b in 0..dn {
                    // (m_a s) ⊗ n_b − m_a ⊗ (s n_b)
                    let mut v = vec![f.zero(); total];
                    for x in 0..dm {
                        let c = rs.get(x, a);
                        if !f.is_zero(c) {
                            v[x * dn + b] = f.add(&v[x * dn + b], c);
                        }
                    }
                    for y in 0..dn {
                        let c = ls.get(y, b);
                        if !f.is_zero(c) {
                            v[a * dn + y] = f.sub(&v[a * dn + y], c);
                        }
                    }
                    if !is_zero_vec(&f, &v) {
                        rels.insert(&f, &v);
                    }
                }
            }
        }
    }
    let relations = rels.to_subspace(&f);
    let keep: Vec<usize> = (0..total).filter(|i| !relations.pivots().contains(i)).collect();
    let mut t = Tensor {
        module: Bimodule {
            left_alg: m.left_alg.clone(),
            right_alg: n.right_alg.clone(),
            dim: 0,
            left: Vec::new(),
            right: Vec::new(),
        },
        relations,
        keep,
        dim_m: dm,
        dim_n: dn,
    };
    let d = t.dim();
    let idn = Mat::identity(&f, dn);
    let idm = Mat::identity(&f, dm);
    let induced = |full: &Mat| -> Mat {
        let cols: Vec<Vector> = (0..d)
            .map(|c| t.project(&f, &full.mul_vec(&f, &t.section(&f, &unit_vec(&f, d, c)))))
            .collect();
        if d == 0 {
            Mat::zeros(&f, 0, 0)
        } else {
            Mat::from_cols(d, &cols)
        }
    };
    let left: Vec<Mat> = m.left.iter().map(|a| induced(&a.kron(&f, &idn))).collect();
    let right: Vec<Mat> = n.right.iter().map(|b| induced(&idm.kron(&f, b))).collect();
    t.module = Bimodule { left_alg: m.left_alg.clone(), right_alg: n.right_alg.clone(), dim: d, left, right };
    Ok(t)
}

/// `M^S = {m : s m = m s}` for a bimodule with both actions by one algebra.
pub fn casimir_subspace(m: &Bimodule) -> Result<Subspace> {
    if !same_algebra(&m.left_alg, &m.right_alg) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let mut rows = Vec::new();
    for (l, r) in m.left.iter().zip(&m.right) {
        let d = l.sub(f, r);
        for i in 0..m.dim {
            rows.push(d.row(i).to_vec());
        }
    }
    if rows.is_empty() || m.dim == 0 {
        return Ok(Subspace::full(f, m.dim));
    }
    Ok(Subspace::span(f, m.dim, &nullspace(f, &Mat::from_rows(m.dim, &rows))))
}

// ---------------------------------------------------------------------------
// add(N)

/// A family `(f_i: M → N, g_i: N → M)` with `Σ g_i f_i = id_M`.
#[derive(Debug, Clone)]
pub struct SummandWitness {
    pub pairs: Vec<(Mat, Mat)>,
}

impl SummandWitness {
    pub fn verify(&self, m: &Bimodule, n: &Bimodule, side: Side) -> bool {
        let f = m.field();
        let mut acc = Mat::zeros(f, m.dim, m.dim);
        for (a, b) in &self.pairs {
            if !is_hom(m, n, side, a) || !is_hom(n, m, side, b) {
                return false;
            }
            acc = acc.add(f, &b.mul(f, a));
        }
        acc == Mat::identity(f, m.dim)
    }
}

/// Decides `M ∈ add(N)`: `id_M` lies in the span of all `g ∘ f` with
/// `f ∈ Hom(M, N)`, `g ∈ Hom(N, M)`.
pub fn in_add(m: &Bimodule, n: &Bimodule, side: Side) -> Result<Option<SummandWitness>> {
    let fld = m.field().clone();
    if m.dim == 0 {
        return Ok(Some(SummandWitness { pairs: Vec::new() }));
    }
    let fs = hom_space(m, n, side)?;
    let gs = hom_space(n, m, side)?;
    let id = Mat::identity(&fld, m.dim).to_vector();
    let mut span = EchelonBasis::new(m.dim * m.dim);
    let mut used: Vec<(usize, usize, Vector)> = Vec::new();
    'outer: for (a, fa) in fs.basis.iter().enumerate() {
        for (b, gb) in gs.basis.iter().enumerate() {
            let comp = gb.mul(&fld, fa).to_vector();
            if span.insert(&fld, &comp) {
                used.push((a, b, comp));
                if span.contains(&fld, &id) {
                    break 'outer;
                }
            }
        }
    }
    if !span.contains(&fld, &id) {
        return Ok(None);
    }
    let cols: Vec<Vector> = used.iter().map(|(_, _, v)| v.clone()).collect();
    let sol = solve_unchecked(&fld, &Mat::from_cols(m.dim * m.dim, &cols), &id).expect("identity is in the span");
    let c = sol.particular;
    let mut pairs: Vec<(Mat, Mat)> = Vec::new();
    for b in 0..gs.dim() {
        let mut fb = Mat::zeros(&fld, n.dim, m.dim);
        let mut any = false;
        for (k, (a, bb, _)) in used.iter().enumerate() {
            if *bb == b && !fld.is_zero(&c[k]) {
                fb = fb.add(&fld, &fs.basis[*a].scale(&fld, &c[k]));
                any = true;
            }
        }
        if any {
            pairs.push((fb, gs.basis[b].clone()));
        }
    }
    Ok(Some(SummandWitness { pairs }))
}

/// Dual basis `(x_i ∈ M, f_i ∈ Hom(M_R, R_R))` with `Σ x_i f_i(m) = m`,
/// from `M_R ∈ add(R_R)`.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub xs: Vec<Vector>,
    pub fs: Vec<Mat>,
}

pub fn right_dual_basis(m: &Bimodule) -> Result<Option<DualBasis>> {
    let mr = m.forget_left();
    let rr = Bimodule::right_regular(m.right_alg.clone());
    let Some(w) = in_add(&mr, &rr, Side::Right)? else { return Ok(None) };
    let f = m.field();
    let one = m.right_alg.unit();
    let xs = w.pairs.iter().map(|(_, g)| g.mul_vec(f, one)).collect();
    let fs = w.pairs.into_iter().map(|(fm, _)| fm).collect();
    Ok(Some(DualBasis { xs, fs }))
}

/// Dual basis `(y_j ∈ M, g_j ∈ Hom(_T M, _T T))` with `Σ g_j(m) y_j = m`,
/// from `_T M ∈ add(_T T)`.
pub fn left_dual_basis(m: &Bimodule) -> Result<Option<DualBasis>> {
    let tm = m.forget_right();
    let tt = Bimodule::left_regular(m.left_alg.clone());
    let Some(w) = in_add(&tm, &tt, Side::Left)? else { return Ok(None) };
    let f = m.field();
    let one = m.left_alg.unit();
    let xs = w.pairs.iter().map(|(_, g)| g.mul_vec(f, one)).collect();
    let fs = w.pairs.into_iter().map(|(fm, _)| fm).collect();
    Ok(Some(DualBasis { xs, fs }))
}

impl DualBasis {
    /// `Σ x_i · f_i(m) = m` for all basis `m` (right version).
    pub fn verify_right(&self, m: &Bimodule) -> bool {
        let f = m.field();
        (0..m.dim).all(|a| {
            let e = unit_vec(f, m.dim, a);
            let sum = self.xs.iter().zip(&self.fs).fold(vec![f.zero(); m.dim], |acc, (x, fi)| {
                let r = fi.mul_vec(f, &e);
                crate::linalg::vec_add(f, &acc, &m.act_right(x, &r))
            });
            sum == e
        })
    }

    /// `Σ g_j(m) · y_j = m` for all basis `m` (left version).
    pub fn verify_left(&self, m: &Bimodule) -> bool {
        let f = m.field();
        (0..m.dim).all(|a| {
            let e = unit_vec(f, m.dim, a);
            let sum = self.xs.iter().zip(&self.fs).fold(vec![f.zero(); m.dim], |acc, (y, gj)| {
                let t = gj.mul_vec(f, &e);
                crate::linalg::vec_add(f, &acc, &m.act_left(&t, y))
            });
            sum == e
        })
    }
}

/// Linear dual `D(A) = Hom_k(A, k)` as a right `A`-module: `(φ a)(x) = φ(a x)`.
pub fn linear_dual_right(a: &Arc<Algebra>) -> Bimodule {
    let f = a.field().clone();
    // φ as a row vector; (φ·a)(x) = φ(L_a x) so ρ(a) = L_aᵀ on coordinates
    let right: Vec<Mat> = a.left_ops().iter().map(|l| l.transpose()).collect();
    let k = Arc::new(base_field_algebra(&f));
    Bimodule { left_alg: k, right_alg: a.clone(), dim: a.dim(), left: vec![Mat::identity(&f, a.dim())], right }
}

/// `A` is QF iff `A_A ∈ add(D(A)_A)` (self-injective).
pub fn is_qf_ring(a: &Arc<Algebra>) -> bool {
    let reg = Bimodule::right_regular(a.clone());
    in_add(&reg, &linear_dual_right(a), Side::Right).expect("same algebra").is_some()
}

/// Coordinates `v` in `M ⊗ N` of `Σ_i m_i ⊗ n_i` before projection.
pub fn raw_tensor(f: &Field, pairs: &[(Vector, Vector)], dm: usize, dn: usize) -> Vector {
    let mut v = vec![f.zero(); dm * dn];
    for (m, n) in pairs {
        for (a, x) in m.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (b, y) in n.iter().enumerate() {
                v[a * dn + b] = f.mul_add(&v[a * dn + b], x, y);
            }
        }
    }
    v
}

pub fn combine(f: &Field, c: &[Scalar], vs: &[Vector], len: usize) -> Vector {
    combine_vecs(f, c, vs, len)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{direct_sum, group_algebra, matrix_algebra, upper_triangular};
    use crate::group::CayleyTable;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn z2z2() -> Extension {
        let f = f2();
        let k = base_field_algebra(&f);
        let r = Arc::new(direct_sum(&k, &k).unwrap());
        Extension::over_base_field(r)
    }

    /// `T_2(k) ⊆ M_2(k)`; basis of `T_2` is e11, e12, e22.
    pub(crate) fn matrix_over_triangular(f: &Field) -> Extension {
        let m = Arc::new(matrix_algebra(f, 2));
        let t = Arc::new(upper_triangular(f, 2));
        let cols = [0usize, 1, 3].iter().map(|&i| unit_vec(f, 4, i)).collect::<Vec<_>>();
        Extension::new(t, m, Mat::from_cols(4, &cols)).unwrap()
    }

    #[test]
    fn natural_bimodules_validate() {
        let e = matrix_over_triangular(&f2());
        for p in [Pattern::SRS, Pattern::RRS, Pattern::SRR, Pattern::RRR, Pattern::SSS] {
            natural_bimodule(&e, p).validate().unwrap();
        }
        let z = natural_bimodule(&z2z2(), Pattern::SRS);
        assert_eq!(z.dim(), 2);
        assert_eq!(z.left_ops()[0], Mat::identity(&f2(), 2));
    }

    #[test]
    fn hom_spaces() {
        let f = f2();
        let ext = z2z2();
        let r = natural_bimodule(&ext, Pattern::SRS);
        let s = natural_bimodule(&ext, Pattern::SSS);
        let h = hom_space(&r, &s, Side::Both).unwrap();
        assert_eq!(h.dim(), 2);
        for b in &h.basis {
            assert!(is_hom(&r, &s, Side::Both, b));
        }
        let m2 = Arc::new(matrix_algebra(&Field::Rationals, 2));
        let reg = Bimodule::regular(m2);
        assert_eq!(hom_space(&reg, &reg, Side::Both).unwrap().dim(), 1);
        let id = Mat::identity(&f, 2);
        assert!(is_hom(&r, &r, Side::Both, &id));
    }

    #[test]
    fn mismatched_algebras() {
        let f = f2();
        let a = Bimodule::regular(Arc::new(matrix_algebra(&f, 2)));
        let b = Bimodule::regular(Arc::new(upper_triangular(&f, 2)));
        assert_eq!(hom_space(&a, &b, Side::Both).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn tensor_dims() {
        let f = f2();
        let ext = z2z2();
        let rs = natural_bimodule(&ext, Pattern::RRS);
        let sr = natural_bimodule(&ext, Pattern::SRR);
        assert_eq!(tensor_over(&rs, &sr).unwrap().dim(), 4);
        let reg = Bimodule::regular(Arc::new(group_algebra(&f, &CayleyTable::symmetric3())));
        assert_eq!(tensor_over(&reg, &reg).unwrap().dim(), 6);
        let e = matrix_over_triangular(&f);
        let t = tensor_over(&natural_bimodule(&e, Pattern::RRS), &natural_bimodule(&e, Pattern::SRR)).unwrap();
        assert_eq!(t.dim(), 4);
        t.module.validate().unwrap();
    }

    #[test]
    fn duals_and_reflexivity() {
        let f3 = Field::prime(3).unwrap();
        let a = Arc::new(group_algebra(&f3, &CayleyTable::cyclic(2)));
        let ext = Extension::over_base_field(a);
        let d = dual_right(&natural_bimodule(&ext, Pattern::RRS));
        assert_eq!(d.module.dim(), 2);
        d.module.validate().unwrap();
        let e = matrix_over_triangular(&f2());
        for p in [Pattern::RRS, Pattern::SRR, Pattern::RRR] {
            let m = natural_bimodule(&e, p);
            let (d1, d2, map) = double_dual_map(&m);
            d1.module.validate().unwrap();
            d2.module.validate().unwrap();
            assert_eq!(rank(&f2(), &map), m.dim());
        }
    }

    #[test]
    fn zero_module_dual() {
        let f = f2();
        let a = Arc::new(upper_triangular(&f, 2));
        let z = Bimodule::new(a.clone(), a.clone(), 0, vec![Mat::zeros(&f, 0, 0); 3], vec![Mat::zeros(&f, 0, 0); 3]).unwrap();
        assert_eq!(dual_right(&z).module.dim(), 0);
        assert_eq!(dual_left(&z).module.dim(), 0);
    }

    #[test]
    fn casimir_for_identity_extension() {
        let f = f2();
        let a = Arc::new(upper_triangular(&f, 2));
        let reg = Bimodule::regular(a.clone());
        let t = tensor_over(&reg, &reg).unwrap();
        let c = casimir_subspace(&t.module).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&f, &t.pair(&f, a.unit(), a.unit())));
    }

    #[test]
    fn add_examples() {
        let f = f2();
        let e = matrix_over_triangular(&f);
        let r_s = natural_bimodule(&e, Pattern::RRS).forget_left();
        let s_s = Bimodule::right_regular(e.s().clone());
        let w = in_add(&r_s, &s_s, Side::Right).unwrap().unwrap();
        assert!(w.verify(&r_s, &s_s, Side::Right));
        let w = in_add(&r_s, &r_s, Side::Right).unwrap().unwrap();
        assert!(w.verify(&r_s, &r_s, Side::Right));
        // simple top e22 T_2 / rad is not a summand of the projective e11 T_2
        let t2 = e.s().clone();
        let reg = Bimodule::right_regular(t2.clone());
        // right module e11·T_2 = span{e11, e12}
        let p1 = reg.submodule(&[unit_vec(&f, 3, 0), unit_vec(&f, 3, 1)]).unwrap();
        let simple = p1.quotient(&[unit_vec(&f, 2, 1)]).unwrap();
        assert_eq!(simple.dim(), 1);
        assert!(in_add(&simple, &p1, Side::Right).unwrap().is_none());
    }

    #[test]
    fn qf_rings() {
        let f = f2();
        assert!(is_qf_ring(&Arc::new(matrix_algebra(&f, 2))));
        assert!(!is_qf_ring(&Arc::new(upper_triangular(&Field::Rationals, 2))));
        assert!(is_qf_ring(&Arc::new(group_algebra(&f, &CayleyTable::cyclic(2)))));
    }

    #[test]
    fn dual_bases() {
        let f = f2();
        let e = matrix_over_triangular(&f);
        let m = natural_bimodule(&e, Pattern::RRS);
        let db = right_dual_basis(&m).unwrap().unwrap();
        assert!(db.verify_right(&m));
        let m = natural_bimodule(&e, Pattern::SRR);
        let db = left_dual_basis(&m).unwrap().unwrap();
        assert!(db.verify_left(&m));
    }
}
