//! Property deciders for extensions and bimodules.
//!
//! Every positive verdict carries a witness that can be re-checked by
//! [`witness`] without going through the solver that produced it; negative
//! verdicts come from infeasible linear systems or exhausted finite
//! searches.

pub mod bimodule;
pub mod extension;
pub mod invertible;
pub mod report;
pub mod twisted;
pub mod witness;

use serde::Serialize;

use crate::field::{Field, Scalar};
use crate::linalg::{combine_vecs, solve_unchecked, vec_add, Mat, Vector};

pub use bimodule::*;
pub use extension::*;
pub use report::*;
pub use twisted::*;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Budget from `BISEP_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var("BISEP_BUDGET")
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: default_budget() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    LinearInfeasible,
    NoInvertibleElement,
    Budget,
}

#[derive(Debug, Clone)]
pub struct Decision<W> {
    pub verdict: Verdict,
    pub witness: Option<W>,
    pub certificate: Option<CertificateKind>,
    pub reason: Option<String>,
}

impl<W> Decision<W> {
    pub fn yes(w: W) -> Self {
        Decision { verdict: Verdict::True, witness: Some(w), certificate: None, reason: None }
    }

    pub fn no(cert: CertificateKind) -> Self {
        Decision { verdict: Verdict::False, witness: None, certificate: Some(cert), reason: None }
    }

    pub fn no_because(cert: CertificateKind, reason: &str) -> Self {
        Decision { reason: Some(reason.to_string()), ..Decision::no(cert) }
    }

    pub fn unknown(budget: u64) -> Self {
        Decision {
            verdict: Verdict::Unknown,
            witness: None,
            certificate: Some(CertificateKind::Budget),
            reason: Some(format!("search budget of {budget} states exhausted")),
        }
    }

    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        self.verdict == Verdict::False
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        Decision { verdict: self.verdict, witness: self.witness.map(f), certificate: self.certificate, reason: self.reason }
    }

    /// Same verdict without the witness.
    pub fn erase(&self) -> Decision<()> {
        Decision {
            verdict: self.verdict,
            witness: self.witness.as_ref().map(|_| ()),
            certificate: self.certificate,
            reason: self.reason.clone(),
        }
    }
}

/// Conjunction of verdicts: false dominates, then unknown.
pub fn all_of(vs: &[Verdict]) -> Verdict {
    if vs.contains(&Verdict::False) {
        Verdict::False
    } else if vs.contains(&Verdict::Unknown) {
        Verdict::Unknown
    } else {
        Verdict::True
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Solution set `point + span(directions)` of a linear system.
#[derive(Debug, Clone)]
pub struct Affine {
    pub point: Vector,
    pub directions: Vec<Vector>,
}

impl Affine {
    /// Solves `rows · x = rhs` in `ncols` unknowns.
    pub fn solve(f: &Field, ncols: usize, rows: &[Vector], rhs: &[Scalar]) -> Option<Affine> {
        let a = Mat::from_rows(ncols, rows);
        solve_unchecked(f, &a, rhs).map(|s| Affine { point: s.particular, directions: s.nullspace })
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Number of points over a finite field, if it fits in a `u64`.
    pub fn size(&self, f: &Field) -> Option<u64> {
        checked_pow(f.order()?, self.dim())
    }

    pub fn at(&self, f: &Field, coeffs: &[Scalar]) -> Vector {
        if self.directions.is_empty() {
            return self.point.clone();
        }
        vec_add(f, &self.point, &combine_vecs(f, coeffs, &self.directions, self.point.len()))
    }

    /// The `idx`-th point with coefficients drawn from `pts` (base-`|pts|`
    /// digits, first direction least significant).
    pub fn nth(&self, f: &Field, pts: &[Scalar], mut idx: u64) -> Vector {
        let q = pts.len() as u64;
        let c: Vector = (0..self.dim())
            .map(|_| {
                let x = pts[(idx % q) as usize].clone();
                idx /= q;
                x
            })
            .collect();
        self.at(f, &c)
    }
}

/// Size of a solution set: exact over finite fields, by dimension over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    Finite(u128),
    Infinite { dim: usize },
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite { dim } => write!(f, "infinite (dimension {dim})"),
        }
    }
}

pub(crate) fn all_elements(f: &Field) -> Option<Vec<Scalar>> {
    Some((0..f.order()?).map(|i| f.element(i)).collect())
}

/// Order-preserving map, on the rayon pool when `parallel` is set and the
/// feature is enabled.
pub(crate) fn map_maybe_parallel<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
