//! Does a linear space of square matrices contain an invertible one?
//!
//! Exhaustive over small finite fields. Otherwise `det(Σ c_i H_i)` is a
//! polynomial of degree at most `n` in each `c_i`, so it is identically zero
//! iff it vanishes on a grid `G^d` with `|G| = n + 1` distinct scalars. When
//! neither fits the budget, a partial scan can still find an invertible
//! element; otherwise the answer is `Unknown`.

use crate::field::{Field, Scalar};
use crate::linalg::{det, Mat, Vector};

#[derive(Debug, Clone)]
pub enum InvSearch {
    Found { coeffs: Vector, map: Mat },
    /// certified: no element of the space is invertible
    NoneExists,
    Unknown { budget: u64 },
}

/// Scalar tuples in canonical order: index `i` has base-`|pts|` digits,
/// coordinate 0 least significant.
fn tuple(pts: &[Scalar], mut idx: u64, d: usize) -> Vector {
    let q = pts.len() as u64;
    (0..d)
        .map(|_| {
            let x = pts[(idx % q) as usize].clone();
            idx /= q;
            x
        })
        .collect()
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Word-sized evaluator for prime fields.
struct PrimeEval {
    p: u64,
    n: usize,
    mats: Vec<Vec<u64>>,
}

impl PrimeEval {
    fn new(p: u32, n: usize, mats: &[Mat]) -> PrimeEval {
        let mats = mats
            .iter()
            .map(|m| {
                m.data()
                    .iter()
                    .map(|x| match x {
                        Scalar::Fp(v) => *v as u64,
                        _ => unreachable!("prime field expected"),
                    })
                    .collect()
            })
            .collect();
        PrimeEval { p: p as u64, n, mats }
    }

    fn combine(&self, c: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n * self.n];
        for (ci, m) in c.iter().zip(&self.mats) {
            if *ci == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(m) {
                *o = (*o + ci * x) % self.p;
            }
        }
        out
    }

    fn nonsingular(&self, mut a: Vec<u64>) -> bool {
        let (n, p) = (self.n, self.p);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else { return false };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
            }
            let inv = modpow(a[col * n + col], p - 2, p);
            for r in col + 1..n {
                let factor = a[r * n + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = (a[r * n + j] + (p - factor) * a[col * n + j]) % p;
                }
            }
        }
        true
    }
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn combination(f: &Field, c: &[Scalar], mats: &[Mat]) -> Mat {
    Mat::combination(f, c, mats)
}

/// Scans `count` tuples over `pts` in canonical order.
fn scan(f: &Field, mats: &[Mat], pts: &[Scalar], count: u64) -> Option<Vector> {
    let d = mats.len();
    let n = mats[0].rows();
    if let (Field::Prime(p), true) = (f, pts.iter().all(|x| matches!(x, Scalar::Fp(_)))) {
        let ev = PrimeEval::new(*p, n, mats);
        let raw: Vec<u64> = pts.iter().map(|x| if let Scalar::Fp(v) = x { *v as u64 } else { 0 }).collect();
        let q = raw.len() as u64;
        for idx in 0..count {
            let mut i = idx;
            let c: Vec<u64> = (0..d)
                .map(|_| {
                    let x = raw[(i % q) as usize];
                    i /= q;
                    x
                })
                .collect();
            if ev.nonsingular(ev.combine(&c)) {
                return Some(tuple(pts, idx, d));
            }
        }
        return None;
    }
    (0..count).map(|idx| tuple(pts, idx, d)).find(|c| !f.is_zero(&det(f, &combination(f, c, mats))))
}

pub fn find_invertible(f: &Field, mats: &[Mat], n_source: usize, n_target: usize, budget: u64) -> InvSearch {
    if n_source != n_target {
        return InvSearch::NoneExists;
    }
    let n = n_source;
    if n == 0 {
        return InvSearch::Found { coeffs: vec![f.zero(); mats.len()], map: Mat::zeros(f, 0, 0) };
    }
    let d = mats.len();
    if d == 0 {
        return InvSearch::NoneExists;
    }
    let found = |c: Vector| {
        let map = combination(f, &c, mats);
        InvSearch::Found { coeffs: c, map }
    };

    // small finite field: exhaustive
    if let Some(q) = f.order() {
        if let Some(total) = checked_pow(q, d).filter(|&t| t <= budget) {
            let pts: Vec<Scalar> = (0..q).map(|i| f.element(i)).collect();
            return match scan(f, mats, &pts, total) {
                Some(c) => found(c),
                None => InvSearch::NoneExists,
            };
        }
    }

    let grid_total = checked_pow(n as u64 + 1, d).filter(|&t| t <= budget);
    let base_pts = f.distinct_elements(n + 1);
    match (base_pts, grid_total) {
        (Some(pts), Some(total)) => match scan(f, mats, &pts, total) {
            Some(c) => found(c),
            None => InvSearch::NoneExists,
        },
        (Some(pts), None) => {
            // grid too large: partial scan only
            match scan(f, mats, &pts, budget) {
                Some(c) => found(c),
                None => InvSearch::Unknown { budget },
            }
        }
        // q ≤ n: the exhaustive scan over F_q^d is never larger than a
        // grid over an extension field, so it has already been tried
        (None, _) => partial_base(f, mats, budget),
    }
}

fn partial_base(f: &Field, mats: &[Mat], budget: u64) -> InvSearch {
    let q = f.order().expect("finite field");
    let pts: Vec<Scalar> = (0..q).map(|i| f.element(i)).collect();
    match scan(f, mats, &pts, budget) {
        Some(c) => InvSearch::Found { map: Mat::combination(f, &c, mats), coeffs: c },
        None => InvSearch::Unknown { budget },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn identity_space() {
        let f = f2();
        match find_invertible(&f, &[Mat::identity(&f, 3)], 3, 3, 1000) {
            InvSearch::Found { coeffs, .. } => assert_eq!(coeffs, vec![f.one()]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nilpotent_space_has_none() {
        let q = Field::Rationals;
        let e12 = Mat::from_ints(&q, 2, 2, &[0, 1, 0, 0]);
        assert!(matches!(find_invertible(&q, &[e12], 2, 2, 1000), InvSearch::NoneExists));
    }

    #[test]
    fn small_field_budget_vs_exhaustive() {
        // diag(a, b, a+b): det = ab(a+b) vanishes on all of F_2² but not
        // identically; with a tiny budget the answer must be Unknown, with a
        // real budget the exhaustive scan proves there is none.
        let f = f2();
        let a = Mat::from_ints(&f, 3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let b = Mat::from_ints(&f, 3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(matches!(find_invertible(&f, &[a.clone(), b.clone()], 3, 3, 3), InvSearch::Unknown { .. }));
        assert!(matches!(find_invertible(&f, &[a, b], 3, 3, 100), InvSearch::NoneExists));
    }

    #[test]
    fn grid_over_rationals() {
        let q = Field::Rationals;
        // [[a, b], [b, a]]: invertible at (1, 0)
        let a = Mat::identity(&q, 2);
        let b = Mat::from_ints(&q, 2, 2, &[0, 1, 1, 0]);
        assert!(matches!(find_invertible(&q, &[a, b], 2, 2, 1000), InvSearch::Found { .. }));
    }

    #[test]
    fn dimension_mismatch() {
        let f = f2();
        assert!(matches!(find_invertible(&f, &[], 2, 3, 10), InvSearch::NoneExists));
    }
}
