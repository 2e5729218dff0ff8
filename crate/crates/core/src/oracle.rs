//! Brute-force reference deciders over F_2.
//!
//! Nothing here touches the hom-space solver or the trace-span summand
//! test: matrices are bit-packed, hom sets are found by trying every
//! matrix, and `M ∈ add(N)` goes through a Krull–Schmidt decomposition
//! found from idempotents. Only usable at toy sizes, which is the point.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{polynomial_quotient, upper_triangular, Algebra, Table};
use crate::field::Field;
use crate::linalg::Mat;
use crate::modlin::{Bimodule, Extension};

/// `rows × cols` matrix over F_2; bit `j` of `data[i]` is entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Bits {
    pub fn zeros(rows: usize, cols: usize) -> Bits {
        assert!(cols <= 32);
        Bits { rows, cols, data: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Bits {
        let mut m = Bits::zeros(n, n);
        for i in 0..n {
            m.data[i] = 1 << i;
        }
        m
    }

    /// Entry `k` of `idx` (row-major) becomes entry `(k / cols, k % cols)`.
    pub fn from_index(rows: usize, cols: usize, idx: u64) -> Bits {
        let mut m = Bits::zeros(rows, cols);
        for k in 0..rows * cols {
            if idx >> k & 1 == 1 {
                m.data[k / cols] |= 1 << (k % cols);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i] >> j & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    pub fn mul(&self, o: &Bits) -> Bits {
        assert_eq!(self.cols, o.rows);
        let mut out = Bits::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            let mut acc = 0;
            for k in 0..self.cols {
                if self.get(i, k) {
                    acc ^= o.data[k];
                }
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, o: &Bits) -> Bits {
        Bits { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a ^ b).collect() }
    }

    pub fn col(&self, j: usize) -> u32 {
        (0..self.rows).fold(0, |acc, i| acc | (u32::from(self.get(i, j)) << i))
    }

    pub fn from_mat(m: &Mat) -> Bits {
        let f = Field::prime(2).expect("2 is prime");
        let mut b = Bits::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !f.is_zero(m.get(i, j)) {
                    b.data[i] |= 1 << j;
                }
            }
        }
        b
    }

    pub fn to_mat(&self) -> Mat {
        let f = Field::prime(2).expect("2 is prime");
        let mut m = Mat::zeros(&f, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, f.one());
                }
            }
        }
        m
    }

    fn pow(&self, e: usize) -> Bits {
        (0..e).fold(Bits::identity(self.rows), |acc, _| acc.mul(self))
    }
}

/// Reduces `rows` to an xor-basis (pivot = highest set bit).
fn xor_basis(vs: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vs {
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn in_span(basis: &[u32], mut v: u32) -> bool {
    for b in basis {
        v = v.min(v ^ b);
    }
    v == 0
}

/// Invertible `n × n` matrices, `n ≤ 3` in practice.
fn general_linear(n: usize) -> Vec<(Bits, Bits)> {
    let all: Vec<Bits> = (0..1u64 << (n * n)).map(|i| Bits::from_index(n, n, i)).collect();
    let id = Bits::identity(n);
    let mut out = Vec::new();
    for p in &all {
        if xor_basis(p.data.iter().copied()).len() == n {
            let inv = all.iter().find(|q| q.mul(p) == id).expect("invertible").clone();
            out.push((p.clone(), inv));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// presented algebras and their modules

/// An algebra over F_2 with a generating set, the relations those
/// generators must satisfy in a representation, and the basis elements as
/// words in the generators.
pub struct Presented {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub gens: usize,
    relations: Box<dyn Fn(&[Bits]) -> bool + Sync + Send>,
    basis: Box<dyn Fn(&[Bits]) -> Vec<Bits> + Sync + Send>,
}

impl Presented {
    /// `F_2[x]/(g)`, `g` monic with coefficients low degree first.
    pub fn polynomial(g: Vec<u8>) -> Presented {
        let f = Field::prime(2).expect("2 is prime");
        let gs: Vec<_> = g.iter().map(|&c| f.from_int(i64::from(c))).collect();
        let algebra = Arc::new(polynomial_quotient(&f, &gs).expect("monic"));
        let d = g.len() - 1;
        let name = format!("F2[x]/({})", poly_name(&g));
        let g2 = g.clone();
        Presented {
            name,
            algebra,
            gens: 1,
            relations: Box::new(move |x| {
                let n = x[0].rows;
                let mut acc = Bits::zeros(n, n);
                for (i, &c) in g2.iter().enumerate() {
                    if c == 1 {
                        acc = acc.add(&x[0].pow(i));
                    }
                }
                acc.is_zero()
            }),
            basis: Box::new(move |x| (0..d).map(|i| x[0].pow(i)).collect()),
        }
    }

    /// `T_2(F_2)` on generators `e = e11`, `n = e12`.
    pub fn triangular() -> Presented {
        let f = Field::prime(2).expect("2 is prime");
        Presented {
            name: "T2(F2)".into(),
            algebra: Arc::new(upper_triangular(&f, 2)),
            gens: 2,
            relations: Box::new(|x| {
                let (e, n) = (&x[0], &x[1]);
                e.mul(e) == *e && n.mul(n).is_zero() && e.mul(n) == *n && n.mul(e).is_zero()
            }),
            basis: Box::new(|x| {
                let id = Bits::identity(x[0].rows);
                vec![x[0].clone(), x[1].clone(), id.add(&x[0])]
            }),
        }
    }

    /// Commutative `F_2[x, y]` modulo every monomial outside `monomials`
    /// (which must be closed under division).
    pub fn monomial(name: &str, monomials: Vec<(usize, usize)>) -> Presented {
        let f = Field::prime(2).expect("2 is prime");
        let d = monomials.len();
        let mut t = Table::zeros(&f, d);
        for (i, &(a, b)) in monomials.iter().enumerate() {
            for (j, &(c, e)) in monomials.iter().enumerate() {
                if let Some(k) = monomials.iter().position(|&m| m == (a + c, b + e)) {
                    t.set(i, j, k, f.one());
                }
            }
        }
        let one = monomials.iter().position(|&m| m == (0, 0)).expect("1 is a monomial");
        let mut unit = vec![f.zero(); d];
        unit[one] = f.one();
        let algebra = Arc::new(Algebra::new(f, t, unit, None).expect("monomial algebras are associative"));
        let outside: Vec<(usize, usize)> = (0..=3)
            .flat_map(|a| (0..=3).map(move |b| (a, b)))
            .filter(|m| !monomials.contains(m))
            .collect();
        let mons = monomials.clone();
        Presented {
            name: name.into(),
            algebra,
            gens: 2,
            relations: Box::new(move |x| {
                let word = |(a, b): (usize, usize)| x[0].pow(a).mul(&x[1].pow(b));
                x[0].mul(&x[1]) == x[1].mul(&x[0]) && outside.iter().all(|&m| word(m).is_zero())
            }),
            basis: Box::new(move |x| mons.iter().map(|&(a, b)| x[0].pow(a).mul(&x[1].pow(b))).collect()),
        }
    }

    /// Every algebra used by the module oracle: all `F_2[x]/(g)` with
    /// `deg g ≤ 4`, `T_2`, and two local commutative algebras.
    pub fn standard() -> Vec<Presented> {
        let mut out = Vec::new();
        for deg in 1..=4usize {
            for low in 0..1u32 << deg {
                let mut g: Vec<u8> = (0..deg).map(|i| (low >> i & 1) as u8).collect();
                g.push(1);
                out.push(Presented::polynomial(g));
            }
        }
        out.push(Presented::triangular());
        out.push(Presented::monomial("F2[x,y]/(x,y)^2", vec![(0, 0), (1, 0), (0, 1)]));
        out.push(Presented::monomial("F2[x,y]/(x^2,y^2)", vec![(0, 0), (1, 0), (0, 1), (1, 1)]));
        out
    }

    /// One representative per isomorphism class of modules of dimension
    /// `m`, as generator images.
    pub fn modules(&self, m: usize) -> Vec<Vec<Bits>> {
        let gl = general_linear(m);
        let total = 1u64 << (m * m * self.gens);
        let mut seen: BTreeSet<Vec<Bits>> = BTreeSet::new();
        for idx in 0..total {
            let xs: Vec<Bits> = (0..self.gens).map(|g| Bits::from_index(m, m, idx >> (g * m * m) & ((1 << (m * m)) - 1))).collect();
            if !(self.relations)(&xs) {
                continue;
            }
            let canon = gl
                .iter()
                .map(|(p, pinv)| xs.iter().map(|x| p.mul(x).mul(pinv)).collect::<Vec<_>>())
                .min()
                .expect("GL is nonempty");
            seen.insert(canon);
        }
        seen.into_iter().collect()
    }

    /// Action matrices of every basis element.
    pub fn basis_action(&self, xs: &[Bits]) -> Vec<Bits> {
        (self.basis)(xs)
    }

    /// The module as a left module for the solver side.
    pub fn to_bimodule(&self, xs: &[Bits]) -> Bimodule {
        let f = Field::prime(2).expect("2 is prime");
        let m = xs[0].rows;
        let left = self.basis_action(xs).iter().map(Bits::to_mat).collect();
        let k = Arc::new(crate::algebra::base_field_algebra(&f));
        Bimodule::new(self.algebra.clone(), k, m, left, vec![Mat::identity(&f, m)]).expect("relations imply a module")
    }
}

fn poly_name(g: &[u8]) -> String {
    let terms: Vec<String> = g
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| match i {
            0 => "1".into(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        })
        .collect();
    terms.join("+")
}

/// All `f: M → N` (`dim N × dim M`) commuting with the generator actions.
fn homs(m: &[Bits], n: &[Bits]) -> Vec<Bits> {
    let (dm, dn) = (m[0].rows, n[0].rows);
    (0..1u64 << (dm * dn))
        .map(|i| Bits::from_index(dn, dm, i))
        .filter(|f| m.iter().zip(n).all(|(a, b)| f.mul(a) == b.mul(f)))
        .collect()
}

/// Restricts the generator actions to `im(e)` for an idempotent `e`.
fn restrict(xs: &[Bits], e: &Bits) -> Vec<Bits> {
    let cols: Vec<u32> = (0..e.cols).map(|j| e.col(j)).collect();
    // basis of the column space in echelon form, remembering nothing else:
    // coordinates are recovered by solving against the chosen columns
    let mut chosen: Vec<u32> = Vec::new();
    for &c in &cols {
        if c != 0 && !in_span(&xor_basis(chosen.iter().copied()), c) {
            chosen.push(c);
        }
    }
    let r = chosen.len();
    let coords = |v: u32| -> u32 {
        (0..1u32 << r)
            .find(|&mask| (0..r).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc ^ chosen[i]) == v)
            .expect("vector lies in the image")
    };
    xs.iter()
        .map(|x| {
            let mut out = Bits::zeros(r, r);
            for (j, &b) in chosen.iter().enumerate() {
                let img = x.mul(&Bits { rows: x.cols, cols: 1, data: (0..x.cols).map(|i| b >> i & 1).collect() });
                let v = img.col(0);
                let c = coords(v);
                for i in 0..r {
                    if c >> i & 1 == 1 {
                        out.data[i] |= 1 << j;
                    }
                }
            }
            out
        })
        .collect()
}

/// Indecomposable summands of `M`, via nontrivial idempotent
/// endomorphisms.
pub fn decompose(xs: &[Bits]) -> Vec<Vec<Bits>> {
    let m = xs[0].rows;
    if m == 0 {
        return Vec::new();
    }
    let id = Bits::identity(m);
    let split = homs(xs, xs).into_iter().find(|e| e.mul(e) == *e && !e.is_zero() && *e != id);
    match split {
        None => vec![xs.to_vec()],
        Some(e) => {
            let mut out = decompose(&restrict(xs, &e));
            out.extend(decompose(&restrict(xs, &id.add(&e))));
            out
        }
    }
}

/// `X` is a direct summand of `N`: some `g f = id_X`.
pub fn is_summand(x: &[Bits], n: &[Bits]) -> bool {
    let id = Bits::identity(x[0].rows);
    let fs = homs(x, n);
    let gs = homs(n, x);
    fs.iter().any(|f| gs.iter().any(|g| g.mul(f) == id))
}

/// `M ∈ add(N)` by Krull–Schmidt: each indecomposable summand of `M` must
/// be a summand of `N`.
pub fn in_add_brute(m: &[Bits], n: &[Bits]) -> bool {
    decompose(m).iter().all(|x| is_summand(x, n))
}

// ---------------------------------------------------------------------------
// extensions over F_2

fn check_f2(ext: &Extension) {
    assert_eq!(ext.field(), &Field::prime(2).expect("2 is prime"), "oracle works over F_2 only");
}

fn algebra_bits(a: &Algebra) -> Vec<Bits> {
    // left multiplication by each basis element
    (0..a.dim()).map(|i| Bits::from_mat(&a.left_mul_matrix(&a.basis_vec(i)))).collect()
}

fn vec_bits(v: &Mat) -> u32 {
    Bits::from_mat(v).col(0)
}

/// Every `S`-`S`-bimodule projection `E: R → S` with `E ι = id`, by trying
/// all `2^(dim S · dim R)` matrices.
pub fn split_projections(ext: &Extension) -> Vec<Bits> {
    check_f2(ext);
    let (s, r) = (ext.s(), ext.r());
    let (ds, dr) = (s.dim(), r.dim());
    let iota = Bits::from_mat(ext.iota());
    let s_left = algebra_bits(s);
    let s_right: Vec<Bits> = (0..ds).map(|j| Bits::from_mat(&s.right_mul_matrix(&s.basis_vec(j)))).collect();
    let r_left: Vec<Bits> = (0..ds).map(|j| Bits::from_mat(&r.left_mul_matrix(&ext.image_basis(j)))).collect();
    let r_right: Vec<Bits> = (0..ds).map(|j| Bits::from_mat(&r.right_mul_matrix(&ext.image_basis(j)))).collect();
    let id = Bits::identity(ds);
    (0..1u64 << (ds * dr))
        .map(|i| Bits::from_index(ds, dr, i))
        .filter(|e| {
            e.mul(&iota) == id
                && (0..ds).all(|j| e.mul(&r_left[j]) == s_left[j].mul(e) && e.mul(&r_right[j]) == s_right[j].mul(e))
        })
        .collect()
}

/// Span of the relations `x s ⊗ y − x ⊗ s y` in `R ⊗_k R`, index `a·n + b`.
fn tensor_relation_basis(ext: &Extension) -> Vec<u32> {
    let r = ext.r();
    let n = r.dim();
    let mut rels = Vec::new();
    for j in 0..ext.s().dim() {
        let s = ext.image_basis(j);
        for a in 0..n {
            let xs = vec_bits(&Mat::from_cols(n, &[r.mul(&r.basis_vec(a), &s)]));
            for b in 0..n {
                let sy = vec_bits(&Mat::from_cols(n, &[r.mul(&s, &r.basis_vec(b))]));
                let mut v = 0u32;
                for i in 0..n {
                    if xs >> i & 1 == 1 {
                        v ^= 1 << (i * n + b);
                    }
                    if sy >> i & 1 == 1 {
                        v ^= 1 << (a * n + i);
                    }
                }
                rels.push(v);
            }
        }
    }
    xor_basis(rels)
}

/// `dim_k (R ⊗_S R)`.
pub fn tensor_dim(ext: &Extension) -> usize {
    check_f2(ext);
    let n = ext.r().dim();
    assert!(n * n <= 32, "too large for the oracle");
    n * n - tensor_relation_basis(ext).len()
}

/// Some `e ∈ R ⊗_k R` (index `a·n + b`) whose class is a separability
/// element, by trying all `2^(n²)` elements.
pub fn separability_element(ext: &Extension) -> Option<u32> {
    check_f2(ext);
    let r = ext.r();
    let n = r.dim();
    assert!(n * n <= 20, "too large for the oracle");
    let rels = tensor_relation_basis(ext);
    let prod: Vec<u32> = (0..n * n)
        .map(|k| vec_bits(&Mat::from_cols(n, &[r.product_basis(k / n, k % n)])))
        .collect();
    let unit = vec_bits(&Mat::from_cols(n, &[r.unit().clone()]));
    let lm = algebra_bits(r);
    let rm: Vec<Bits> = (0..n).map(|i| Bits::from_mat(&r.right_mul_matrix(&r.basis_vec(i)))).collect();
    (0..1u32 << (n * n)).find(|&e| {
        let mu = (0..n * n).filter(|&k| e >> k & 1 == 1).fold(0, |acc, k| acc ^ prod[k]);
        if mu != unit {
            return false;
        }
        (0..n).all(|t| {
            // (e_t ⊗ 1) e − e (1 ⊗ e_t)
            let mut diff = 0u32;
            for k in (0..n * n).filter(|&k| e >> k & 1 == 1) {
                let (a, b) = (k / n, k % n);
                let ta = lm[t].col(a);
                let bt = rm[t].col(b);
                for i in 0..n {
                    if ta >> i & 1 == 1 {
                        diff ^= 1 << (i * n + b);
                    }
                    if bt >> i & 1 == 1 {
                        diff ^= 1 << (a * n + i);
                    }
                }
            }
            in_span(&rels, diff)
        })
    })
}

/// Number of `E: R → k` whose trace form `(x, y) ↦ E(xy)` is
/// nondegenerate, i.e. Frobenius homomorphisms of `R` over F_2.
pub fn frobenius_forms(r: &Algebra) -> usize {
    let n = r.dim();
    let prod: Vec<u32> = (0..n * n)
        .map(|k| vec_bits(&Mat::from_cols(n, &[r.product_basis(k / n, k % n)])))
        .collect();
    (0..1u32 << n)
        .filter(|&e| {
            let gram = (0..n).map(|a| (0..n).fold(0u32, |row, b| row | (((prod[a * n + b] & e).count_ones() & 1) << b)));
            xor_basis(gram).len() == n
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::diagonal;

    #[test]
    fn counts_on_small_cases() {
        let f2 = Field::prime(2).unwrap();
        let z = Extension::over_base_field(Arc::new(diagonal(&f2, 2)));
        assert_eq!(split_projections(&z).len(), 2);
        assert!(separability_element(&z).is_some());
        assert_eq!(frobenius_forms(z.r()), 1);
        assert_eq!(tensor_dim(&z), 4);
    }

    #[test]
    fn nilpotent_modules_and_decomposition() {
        // x^2 = 0 in dimension 2: the zero action and one Jordan block
        let p = Presented::polynomial(vec![0, 0, 1]);
        let ms = p.modules(2);
        assert_eq!(ms.len(), 2);
        let sizes: BTreeSet<usize> = ms.iter().map(|m| decompose(m).len()).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2]));
        assert_eq!(general_linear(3).len(), 168);
    }
}
