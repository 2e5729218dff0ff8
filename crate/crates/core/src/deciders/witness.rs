//! Witness types and their independent re-verification. The checks here
//! only multiply in the algebras and compare; the one linear-algebra step
//! (membership in the tensor relations) rebuilds the relations from scratch.

use serde_json::{json, Value};

use crate::field::Field;
use crate::linalg::{is_zero_vec, vec_add, vec_sub, Mat, Subspace, Vector};
use crate::modlin::{DualBasis, Extension, SummandWitness};

pub fn vec_json(f: &Field, v: &[crate::field::Scalar]) -> Value {
    Value::Array(v.iter().map(|x| f.to_json(x)).collect())
}

pub fn mat_json(f: &Field, m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_json(f, m.row(i))).collect())
}

/// Relations `x ι(s) ⊗ y − x ⊗ ι(s) y` spanning the kernel of
/// `R ⊗_k R → R ⊗_S R`.
pub fn tensor_relations(ext: &Extension) -> Subspace {
    let (r, f) = (ext.r(), ext.field());
    let n = r.dim();
    let mut rels = Vec::new();
    for j in 0..ext.s().dim() {
        let s = ext.image_basis(j);
        for a in 0..n {
            let xs = r.mul(&r.basis_vec(a), &s);
            for b in 0..n {
                let sy = r.mul(&s, &r.basis_vec(b));
                let left = pure(f, &xs, &r.basis_vec(b));
                let right = pure(f, &r.basis_vec(a), &sy);
                rels.push(vec_sub(f, &left, &right));
            }
        }
    }
    Subspace::span(f, n * n, &rels)
}

fn pure(f: &Field, x: &[crate::field::Scalar], y: &[crate::field::Scalar]) -> Vector {
    let mut v = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            v.push(f.mul(a, b));
        }
    }
    v
}

/// `Σ c_ab e_a ⊗ e_b` given by full coordinates in `R ⊗_k R`.
fn terms(element: &[crate::field::Scalar], n: usize) -> impl Iterator<Item = (usize, usize, &crate::field::Scalar)> {
    element.iter().enumerate().map(move |(i, c)| (i / n, i % n, c))
}

#[derive(Debug, Clone)]
pub struct SeparabilityWitness {
    /// coordinates in `R ⊗_k R`, index `a * dim R + b`
    pub element: Vector,
}

impl SeparabilityWitness {
    pub fn verify(&self, ext: &Extension) -> bool {
        let (r, f) = (ext.r(), ext.field());
        let n = r.dim();
        if self.element.len() != n * n {
            return false;
        }
        let mut mu = r.zero_vec();
        for (a, b, c) in terms(&self.element, n) {
            if !f.is_zero(c) {
                let p = r.product_basis(a, b);
                mu = vec_add(f, &mu, &p.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
            }
        }
        if &mu != r.unit() {
            return false;
        }
        let rels = tensor_relations(ext);
        (0..n).all(|k| {
            // (e_k ⊗ 1) e − e (1 ⊗ e_k)
            let mut diff = vec![f.zero(); n * n];
            for (a, b, c) in terms(&self.element, n) {
                if f.is_zero(c) {
                    continue;
                }
                let ka = r.product_basis(k, a);
                let bk = r.product_basis(b, k);
                let l = pure(f, &ka, &r.basis_vec(b));
                let rr = pure(f, &r.basis_vec(a), &bk);
                let d = vec_sub(f, &l, &rr);
                diff = vec_add(f, &diff, &d.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
            }
            is_zero_vec(f, &diff) || rels.contains(f, &diff)
        })
    }

    pub fn to_json(&self, f: &Field, n: usize) -> Value {
        let t: Vec<Value> = terms(&self.element, n)
            .filter(|(_, _, c)| !f.is_zero(c))
            .map(|(a, b, c)| json!([a, b, f.to_json(c)]))
            .collect();
        json!({ "tensor_terms": t })
    }
}

/// Checks that `e` (a `dim S × dim R` matrix) is an `S`-`S`-bimodule map.
pub fn is_ss_bilinear(ext: &Extension, e: &Mat) -> bool {
    let (r, s, f) = (ext.r(), ext.s(), ext.field());
    if e.rows() != s.dim() || e.cols() != r.dim() {
        return false;
    }
    (0..s.dim()).all(|j| {
        let sj = ext.image_basis(j);
        (0..r.dim()).all(|a| {
            let x = r.basis_vec(a);
            let ex = e.mul_vec(f, &x);
            e.mul_vec(f, &r.mul(&sj, &x)) == s.mul(&s.basis_vec(j), &ex)
                && e.mul_vec(f, &r.mul(&x, &sj)) == s.mul(&ex, &s.basis_vec(j))
        })
    })
}

#[derive(Debug, Clone)]
pub struct SplitWitness {
    pub projection: Mat,
}

impl SplitWitness {
    pub fn verify(&self, ext: &Extension) -> bool {
        let f = ext.field();
        is_ss_bilinear(ext, &self.projection)
            && self.projection.mul(f, ext.iota()) == Mat::identity(f, ext.s().dim())
    }

    pub fn to_json(&self, f: &Field) -> Value {
        json!({ "projection": mat_json(f, &self.projection) })
    }
}

#[derive(Debug, Clone)]
pub struct FrobeniusSystem {
    /// Frobenius homomorphism `R → S`
    pub e: Mat,
    pub xs: Vec<Vector>,
    pub ys: Vec<Vector>,
}

impl FrobeniusSystem {
    /// `Σ E(r x_i) y_i = r = Σ x_i E(y_i r)` for every basis `r`, and `E` is
    /// an `S`-`S`-bimodule map.
    pub fn verify(&self, ext: &Extension) -> bool {
        let (r, f) = (ext.r(), ext.field());
        if self.xs.len() != self.ys.len() || !is_ss_bilinear(ext, &self.e) {
            return false;
        }
        let ev = |x: &Vector| ext.image(&self.e.mul_vec(f, x));
        (0..r.dim()).all(|k| {
            let rk = r.basis_vec(k);
            let mut left = r.zero_vec();
            let mut right = r.zero_vec();
            for (x, y) in self.xs.iter().zip(&self.ys) {
                left = vec_add(f, &left, &r.mul(&ev(&r.mul(&rk, x)), y));
                right = vec_add(f, &right, &r.mul(x, &ev(&r.mul(y, &rk))));
            }
            left == rk && right == rk
        })
    }

    pub fn to_json(&self, f: &Field) -> Value {
        json!({
            "frobenius_hom": mat_json(f, &self.e),
            "xs": self.xs.iter().map(|v| vec_json(f, v)).collect::<Vec<_>>(),
            "ys": self.ys.iter().map(|v| vec_json(f, v)).collect::<Vec<_>>(),
        })
    }
}

pub fn dual_basis_json(f: &Field, db: &DualBasis) -> Value {
    json!({
        "elements": db.xs.iter().map(|v| vec_json(f, v)).collect::<Vec<_>>(),
        "functionals": db.fs.iter().map(|m| mat_json(f, m)).collect::<Vec<_>>(),
    })
}

pub fn summand_json(f: &Field, w: &SummandWitness) -> Value {
    json!({
        "pairs": w.pairs.iter().map(|(a, b)| json!({"into": mat_json(f, a), "back": mat_json(f, b)})).collect::<Vec<_>>(),
    })
}

/// A split projection together with a separability element satisfying
/// `Σ E(x_i) y_i = 1 = Σ x_i E(y_i)`.
#[derive(Debug, Clone)]
pub struct AxiomWitness {
    pub projection: Mat,
    pub element: Vector,
}

impl AxiomWitness {
    pub fn verify(&self, ext: &Extension) -> bool {
        let (r, f) = (ext.r(), ext.field());
        let n = r.dim();
        if !(SplitWitness { projection: self.projection.clone() }).verify(ext)
            || !(SeparabilityWitness { element: self.element.clone() }).verify(ext)
        {
            return false;
        }
        let ev = |x: &Vector| ext.image(&self.projection.mul_vec(f, x));
        let mut left = r.zero_vec();
        let mut right = r.zero_vec();
        for (a, b, c) in terms(&self.element, n) {
            if f.is_zero(c) {
                continue;
            }
            let (xa, yb) = (r.basis_vec(a), r.basis_vec(b));
            let l = r.mul(&ev(&xa), &yb);
            let rr = r.mul(&xa, &ev(&yb));
            left = vec_add(f, &left, &l.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
            right = vec_add(f, &right, &rr.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
        }
        &left == r.unit() && &right == r.unit()
    }

    pub fn to_json(&self, f: &Field, n: usize) -> Value {
        json!({
            "projection": mat_json(f, &self.projection),
            "separability_element": SeparabilityWitness { element: self.element.clone() }.to_json(f, n),
        })
    }
}
