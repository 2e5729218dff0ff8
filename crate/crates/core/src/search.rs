//! Counterexample search: generate small extensions, keep those passing a
//! filter (e.g. biseparable), and test an expectation (e.g. Frobenius) on
//! each. Any filter-pass / expectation-fail instance is serialized in full
//! and re-verified from its JSON alone.
//!
//! Candidates are keyed by the structure constants of `R` plus the echelon
//! basis of `S` inside `R`; conjugate subalgebras are not identified.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    base_field_algebra, diagonal, direct_sum, generated_subalgebra, group_algebra, matrix_algebra, opposite,
    polynomial_quotient, subalgebra, tensor_over_field, truncated_polynomial, upper_triangular, AdjoinedBimodule,
    Algebra, Table,
};
use crate::deciders::{check_extension, extension_property, Config, ExtContext, ReportOptions, Verdict, EXTENSION_PROPERTIES};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::CayleyTable;
use crate::io::{algebra_to_json, extension_from_json, extension_to_json};
use crate::linalg::{inverse, Mat, Subspace, Vector};
use crate::modlin::{subalgebra_extension, trivial_extension_pair, Extension};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// builtin and random algebras, every subalgebra generated by ≤ 2 elements
    Enumerate,
    /// random algebras, subalgebras generated by random elements
    Random,
    /// `S ⊕ I ⊆ R ⊕ I` over small base extensions
    TrivialExt,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "enumerate" | "enumerate_subalgebras" => Ok(Mode::Enumerate),
            "random" | "random_structure" => Ok(Mode::Random),
            "trivial_ext" | "trivial-ext" => Ok(Mode::TrivialExt),
            _ => Err(Error::BadParams(format!("unknown mode `{s}` (enumerate, random, trivial_ext)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub field: Field,
    pub max_dim_r: usize,
    pub max_dim_s: usize,
    pub mode: Mode,
    pub filter: Vec<String>,
    pub expect: String,
    pub seed: u64,
    pub budget: u64,
    pub jobs: usize,
    /// random algebras added to the builtin list (or drawn, in random mode)
    pub random_algebras: usize,
    pub timing: bool,
}

impl SearchConfig {
    pub fn new(field: Field) -> SearchConfig {
        SearchConfig {
            field,
            max_dim_r: 4,
            max_dim_s: 4,
            mode: Mode::Enumerate,
            filter: vec!["biseparable".into()],
            expect: "frobenius".into(),
            seed: 0,
            budget: crate::deciders::default_budget(),
            jobs: 0,
            random_algebras: 1000,
            timing: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_dim_r == 0 || self.max_dim_s == 0 {
            return Err(Error::BadParams("dimension bounds must be at least 1".into()));
        }
        for p in self.filter.iter().chain(std::iter::once(&self.expect)) {
            if !EXTENSION_PROPERTIES.contains(&p.as_str()) || p.ends_with("_count") {
                return Err(Error::BadParams(format!("`{p}` is not a yes/no extension property")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Unknown {
    pub key: String,
    pub property: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub mode: Mode,
    pub field: String,
    pub max_dim_r: usize,
    pub max_dim_s: usize,
    pub filter: Vec<String>,
    pub expect: String,
    pub algebras: usize,
    pub random_tables_tried: u64,
    pub random_tables_accepted: u64,
    pub candidates: usize,
    pub filter_hits: usize,
    pub expectation_held: usize,
    pub violations: Vec<Value>,
    pub unknowns: Vec<Unknown>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

// ---------------------------------------------------------------------------
// algebra generation

fn all_elements(f: &Field) -> Option<Vec<Scalar>> {
    Some((0..f.order()?).map(|i| f.element(i)).collect())
}

fn random_scalar(f: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f.order() {
        Some(q) => f.element(rng.gen_range(0..q)),
        None => f.from_int(rng.gen_range(-2..=2)),
    }
}

/// Every monic polynomial of degree `d` over a finite field, or a few
/// fixed ones over ℚ.
fn monic_polys(f: &Field, d: usize) -> Vec<Vector> {
    match all_elements(f) {
        Some(el) if (el.len() as u64).checked_pow(d as u32).is_some_and(|n| n <= 256) => {
            let q = el.len();
            (0..q.pow(d as u32))
                .map(|mut i| {
                    let mut g: Vector = (0..d)
                        .map(|_| {
                            let c = el[i % q].clone();
                            i /= q;
                            c
                        })
                        .collect();
                    g.push(f.one());
                    g
                })
                .collect()
        }
        _ => {
            // x^d, x^d − x, x^d + 1 (the last is x^2 + 1 irreducible for d = 2)
            let mut out = Vec::new();
            for low in [vec![], vec![(1, -1)], vec![(0, 1)]] {
                let mut g = vec![f.zero(); d + 1];
                g[d] = f.one();
                for (i, c) in low {
                    if i < d {
                        g[i] = f.from_int(c);
                    }
                }
                out.push(g);
            }
            out.dedup();
            out
        }
    }
}

fn monomial_algebra(f: &Field, monomials: &[(usize, usize)]) -> Result<Algebra> {
    let d = monomials.len();
    let mut t = Table::zeros(f, d);
    for (i, &(a, b)) in monomials.iter().enumerate() {
        for (j, &(c, e)) in monomials.iter().enumerate() {
            if let Some(k) = monomials.iter().position(|&m| m == (a + c, b + e)) {
                t.set(i, j, k, f.one());
            }
        }
    }
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    Algebra::new(f.clone(), t, unit, None)
}

/// Named small algebras of dimension `≤ max_dim`, in a fixed order.
pub fn builtin_algebras(f: &Field, max_dim: usize) -> Vec<(String, Algebra)> {
    let mut out: Vec<(String, Algebra)> = vec![("k".into(), base_field_algebra(f))];
    for d in 2..=max_dim {
        for g in monic_polys(f, d) {
            let name = format!("k[x]/({})", g.iter().map(|c| f.to_json(c).to_string()).collect::<Vec<_>>().join(","));
            if let Ok(a) = polynomial_quotient(f, &g) {
                out.push((name, a));
            }
        }
    }
    let mut extra: Vec<(String, Algebra)> = Vec::new();
    for n in 2..=4 {
        extra.push((format!("diag{n}"), diagonal(f, n)));
    }
    extra.push(("T2".into(), upper_triangular(f, 2)));
    extra.push(("M2".into(), matrix_algebra(f, 2)));
    for g in ["C2", "C3", "C4"] {
        extra.push((format!("k[{g}]"), group_algebra(f, &CayleyTable::by_name(g).expect("builtin group"))));
    }
    extra.push(("k[C2xC2]".into(), tensor_over_field(&group_algebra(f, &CayleyTable::cyclic(2)), &group_algebra(f, &CayleyTable::cyclic(2))).expect("same field")));
    if let Ok(a) = monomial_algebra(f, &[(0, 0), (1, 0), (0, 1)]) {
        extra.push(("k[x,y]/(x,y)^2".into(), a));
    }
    if let Ok(a) = monomial_algebra(f, &[(0, 0), (1, 0), (0, 1), (1, 1)]) {
        extra.push(("k[x,y]/(x^2,y^2)".into(), a));
    }
    // direct sums of two small pieces
    let pieces = [("k", base_field_algebra(f)), ("dual", truncated_polynomial(f, 2)), ("T2", upper_triangular(f, 2))];
    for (i, (na, a)) in pieces.iter().enumerate() {
        for (nb, b) in &pieces[i..] {
            if let Ok(s) = direct_sum(a, b) {
                extra.push((format!("{na}+{nb}"), s));
            }
        }
    }
    extra.push(("T2op".into(), opposite(&upper_triangular(f, 2))));
    out.extend(extra.into_iter().filter(|(_, a)| a.dim() <= max_dim));
    out
}

/// Subalgebra of `M_m(k)` generated by one or two random matrices.
fn random_matrix_subalgebra(f: &Field, max_dim: usize, rng: &mut ChaCha8Rng) -> Option<Algebra> {
    let m = rng.gen_range(2..=3usize);
    let big = matrix_algebra(f, m);
    let gens: Vec<Vector> = (0..rng.gen_range(1..=2)).map(|_| (0..m * m).map(|_| random_scalar(f, rng)).collect()).collect();
    let space = generated_subalgebra(&big, &gens);
    if space.dim() > max_dim {
        return None;
    }
    subalgebra(&big, &space).ok().map(|(a, _)| a)
}

/// Random structure constants with `e_0` as unit; most fail associativity.
fn random_table(f: &Field, max_dim: usize, rng: &mut ChaCha8Rng) -> Option<Algebra> {
    let d = rng.gen_range(2..=max_dim.max(2));
    let mut t = Table::zeros(f, d);
    for i in 0..d {
        t.set(0, i, i, f.one());
        t.set(i, 0, i, f.one());
    }
    for i in 1..d {
        for j in 1..d {
            for k in 0..d {
                t.set(i, j, k, random_scalar(f, rng));
            }
        }
    }
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    Algebra::new(f.clone(), t, unit, None).ok()
}

/// `a` rewritten in the basis given by the columns of a random invertible
/// matrix: same algebra, different structure constants.
fn rebased(a: &Algebra, rng: &mut ChaCha8Rng) -> Option<Algebra> {
    let f = a.field();
    let n = a.dim();
    let p = Mat::from_vec(n, n, (0..n * n).map(|_| random_scalar(f, rng)).collect());
    let pinv = inverse(f, &p)?;
    let b: Vec<Vector> = (0..n).map(|i| p.col(i)).collect();
    let mut t = Table::zeros(f, n);
    for i in 0..n {
        for j in 0..n {
            let c = pinv.mul_vec(f, &a.mul(&b[i], &b[j]));
            for (k, x) in c.into_iter().enumerate() {
                t.set(i, j, k, x);
            }
        }
    }
    Algebra::new(f.clone(), t, pinv.mul_vec(f, a.unit()), None).ok()
}

struct Generated {
    algebras: Vec<(String, Arc<Algebra>)>,
    tried: u64,
    accepted: u64,
}

fn generate_algebras(cfg: &SearchConfig, include_builtin: bool) -> Generated {
    let f = &cfg.field;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut algebras: Vec<(String, Arc<Algebra>)> = Vec::new();
    if include_builtin {
        algebras.extend(builtin_algebras(f, cfg.max_dim_r).into_iter().map(|(n, a)| (n, Arc::new(a))));
    }
    let (mut tried, mut accepted) = (0, 0);
    let bases: Vec<(String, Algebra)> = builtin_algebras(f, cfg.max_dim_r).into_iter().filter(|(_, a)| a.dim() > 1).collect();
    for i in 0..cfg.random_algebras {
        // rotate through the three random sources
        if i % 3 == 0 {
            if let Some(a) = random_matrix_subalgebra(f, cfg.max_dim_r, &mut rng) {
                algebras.push((format!("matrix-subalgebra#{i}"), Arc::new(a)));
            }
        } else if i % 3 == 1 {
            let (name, base) = &bases[rng.gen_range(0..bases.len())];
            if let Some(a) = rebased(base, &mut rng) {
                algebras.push((format!("{name}@basis#{i}"), Arc::new(a)));
            }
        } else {
            tried += 1;
            if let Some(a) = random_table(f, cfg.max_dim_r, &mut rng) {
                accepted += 1;
                algebras.push((format!("random-table#{i}"), Arc::new(a)));
            }
        }
    }
    Generated { algebras, tried, accepted }
}

// ---------------------------------------------------------------------------
// candidate extensions

struct Candidate {
    key: String,
    origin: String,
    ext: Extension,
}

fn algebra_key(a: &Algebra) -> String {
    let j = algebra_to_json(a);
    format!("{}|{}", j["unit"], j["structure"])
}

fn space_key(f: &Field, s: &Subspace) -> String {
    let rows: Vec<Vec<Value>> = s.basis().iter().map(|v| v.iter().map(|x| f.to_json(x)).collect()).collect();
    serde_json::to_string(&rows).expect("json")
}

/// Subspaces spanned by subalgebras of `r` generated by ≤ 2 elements,
/// deduplicated, excluding `r` itself. Exhaustive over a finite field when
/// the pair count fits the budget, otherwise sampled.
fn subalgebra_spaces(r: &Algebra, cfg: &SearchConfig, rng: &mut ChaCha8Rng, caveats: &mut Vec<String>, name: &str) -> Vec<Subspace> {
    let f = r.field();
    let n = r.dim();
    let mut found: BTreeMap<String, Subspace> = BTreeMap::new();
    let mut add = |gens: &[Vector]| {
        let s = generated_subalgebra(r, gens);
        if s.dim() < n && s.dim() <= cfg.max_dim_s {
            found.entry(space_key(f, &s)).or_insert(s);
        }
    };
    add(&[]);
    let elements: Option<Vec<Vector>> = f.order().and_then(|q| {
        let total = q.checked_pow(n as u32)?;
        let pairs = total.checked_mul(total)?;
        (pairs <= cfg.budget).then(|| {
            (0..total)
                .map(|mut i| {
                    (0..n)
                        .map(|_| {
                            let c = f.element(i % q);
                            i /= q;
                            c
                        })
                        .collect()
                })
                .collect()
        })
    });
    match (&elements, cfg.mode) {
        (Some(el), Mode::Enumerate) => {
            for (i, a) in el.iter().enumerate() {
                add(std::slice::from_ref(a));
                for b in &el[i + 1..] {
                    add(&[a.clone(), b.clone()]);
                }
            }
        }
        _ => {
            if cfg.mode == Mode::Enumerate {
                caveats.push(format!("{name}: subalgebras sampled, not enumerated (field too large for the budget)"));
            }
            for _ in 0..64 {
                let k = rng.gen_range(1..=2);
                let gens: Vec<Vector> = (0..k).map(|_| (0..n).map(|_| random_scalar(f, rng)).collect()).collect();
                add(&gens);
            }
        }
    }
    found.into_values().collect()
}

fn candidates_for(idx: usize, name: &str, r: &Arc<Algebra>, cfg: &SearchConfig) -> (Vec<Candidate>, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut caveats = Vec::new();
    let mut out = Vec::new();
    let rkey = algebra_key(r);
    for s in subalgebra_spaces(r, cfg, &mut rng, &mut caveats, name) {
        if let Ok(ext) = subalgebra_extension(r.clone(), &s) {
            out.push(Candidate { key: format!("{rkey}#{}", space_key(r.field(), &s)), origin: name.to_string(), ext });
        }
    }
    (out, caveats)
}

/// `S ⊕ I ⊆ R ⊕ I` for small base extensions and several multiplicative
/// bimodules `I`.
fn trivial_ext_candidates(cfg: &SearchConfig, base: &[Candidate]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for c in base {
        let r = c.ext.r();
        let ideals = [("regular", AdjoinedBimodule::regular(r, true)), ("square_zero", AdjoinedBimodule::regular(r, false))];
        for (iname, i) in ideals {
            if r.dim() + i.dim > cfg.max_dim_r {
                continue;
            }
            if let Ok(ext) = trivial_extension_pair(&c.ext, &i) {
                out.push(Candidate { key: format!("{}+{iname}", c.key), origin: format!("{} ⊕ {iname}", c.origin), ext });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// evaluation

enum Outcome {
    Filtered,
    FilterUnknown(String),
    Held,
    ExpectUnknown,
    Violated(Value),
}

fn verdict(ctx: &ExtContext, p: &str) -> Result<Verdict> {
    Ok(extension_property(ctx, p, false)?.verdict)
}

/// Filter verdicts and expectation verdict, recomputed from scratch.
fn classify(ext: &Extension, cfg: &SearchConfig) -> Result<(Option<String>, bool, Verdict)> {
    let ctx = ExtContext::new(ext.clone(), Config { budget: cfg.budget });
    for p in &cfg.filter {
        match verdict(&ctx, p)? {
            Verdict::True => {}
            Verdict::False => return Ok((None, false, Verdict::Unknown)),
            Verdict::Unknown => return Ok((Some(p.clone()), false, Verdict::Unknown)),
        }
    }
    Ok((None, true, verdict(&ctx, &cfg.expect)?))
}

fn evaluate(c: &Candidate, cfg: &SearchConfig) -> Result<Outcome> {
    let (unknown, pass, v) = classify(&c.ext, cfg)?;
    if let Some(p) = unknown {
        return Ok(Outcome::FilterUnknown(p));
    }
    if !pass {
        return Ok(Outcome::Filtered);
    }
    Ok(match v {
        Verdict::True => Outcome::Held,
        Verdict::Unknown => Outcome::ExpectUnknown,
        Verdict::False => Outcome::Violated(violation_record(c, cfg)?),
    })
}

fn violation_record(c: &Candidate, cfg: &SearchConfig) -> Result<Value> {
    let instance = extension_to_json(&c.ext);
    let ctx = ExtContext::new(c.ext.clone(), Config { budget: cfg.budget });
    let mut props = cfg.filter.clone();
    props.push(cfg.expect.clone());
    let report = check_extension(&c.key, &ctx, &props, ReportOptions { witnesses: true, timing: false, parallel: false })?;
    Ok(json!({
        "key": c.key,
        "origin": c.origin,
        "instance": instance,
        "report": report.to_json(),
        "reverified": reverify(&instance, cfg)?,
    }))
}

/// Parses the serialized instance and recomputes filter and expectation.
pub fn reverify(instance: &Value, cfg: &SearchConfig) -> Result<bool> {
    let ext = extension_from_json(instance)?;
    let (unknown, pass, v) = classify(&ext, cfg)?;
    Ok(unknown.is_none() && pass && v == Verdict::False)
}

fn run_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        let mut b = rayon::ThreadPoolBuilder::new();
        if jobs > 1 {
            b = b.num_threads(jobs);
        }
        if let Ok(pool) = b.build() {
            return pool.install(work);
        }
    }
    let _ = jobs;
    work()
}

fn build_candidates(gen: &Generated, cfg: &SearchConfig, parallel: bool) -> (Vec<String>, Vec<Candidate>) {
    let indexed: Vec<(usize, &(String, Arc<Algebra>))> = gen.algebras.iter().enumerate().collect();
    let per_algebra = crate::deciders::map_maybe_parallel(&indexed, parallel, |(i, (name, r))| candidates_for(*i, name, r, cfg));
    let mut merged: BTreeMap<String, Candidate> = BTreeMap::new();
    let mut caveats = Vec::new();
    for (cands, cav) in per_algebra {
        caveats.extend(cav);
        for c in cands {
            merged.entry(c.key.clone()).or_insert(c);
        }
    }
    let mut list: Vec<Candidate> = merged.into_values().collect();
    if cfg.mode == Mode::TrivialExt {
        let bases: Vec<Candidate> = list.into_iter().filter(|c| c.ext.r().dim() < cfg.max_dim_r).collect();
        let mut te: BTreeMap<String, Candidate> = BTreeMap::new();
        for c in trivial_ext_candidates(cfg, &bases) {
            te.entry(c.key.clone()).or_insert(c);
        }
        list = te.into_values().collect();
    }
    (caveats, list)
}

/// The deduplicated candidate extensions a search would examine, in key
/// order, as `(key, origin, extension)`.
pub fn candidate_extensions(cfg: &SearchConfig) -> Result<Vec<(String, String, Extension)>> {
    cfg.validate()?;
    let gen = generate_algebras(cfg, cfg.mode != Mode::Random);
    let (_, list) = run_pool(cfg.jobs, || build_candidates(&gen, cfg, cfg.jobs != 1));
    Ok(list.into_iter().map(|c| (c.key, c.origin, c.ext)).collect())
}

pub fn search(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let start = Instant::now();
    let parallel = cfg.jobs != 1;
    let gen = generate_algebras(cfg, cfg.mode != Mode::Random);
    let mut caveats = vec!["subalgebras are compared by echelon basis; conjugate subalgebras count separately".to_string()];
    // a proper unital subalgebra of an algebra of dimension ≤ 4 is spanned by 1 and at most two elements
    if cfg.mode == Mode::Enumerate && cfg.max_dim_r > 4 {
        caveats.push("subalgebras generated by more than two elements are not enumerated".into());
    }

    let (algebras, candidates, outcomes) = run_pool(cfg.jobs, || -> Result<_> {
        let (mut seen_caveats, list) = build_candidates(&gen, cfg, parallel);
        let outcomes = crate::deciders::map_maybe_parallel(&list, parallel, |c| evaluate(c, cfg));
        let outcomes: Vec<Outcome> = outcomes.into_iter().collect::<Result<_>>()?;
        seen_caveats.sort();
        seen_caveats.dedup();
        Ok((seen_caveats, list, outcomes))
    })?;
    caveats.extend(algebras);

    let mut report = SearchReport {
        seed: cfg.seed,
        mode: cfg.mode,
        field: cfg.field.to_string(),
        max_dim_r: cfg.max_dim_r,
        max_dim_s: cfg.max_dim_s,
        filter: cfg.filter.clone(),
        expect: cfg.expect.clone(),
        algebras: gen.algebras.len(),
        random_tables_tried: gen.tried,
        random_tables_accepted: gen.accepted,
        candidates: candidates.len(),
        filter_hits: 0,
        expectation_held: 0,
        violations: Vec::new(),
        unknowns: Vec::new(),
        caveats,
        wall_ms: None,
    };
    for (c, o) in candidates.iter().zip(outcomes) {
        match o {
            Outcome::Filtered => {}
            Outcome::FilterUnknown(p) => report.unknowns.push(Unknown { key: c.key.clone(), property: p }),
            Outcome::Held => {
                report.filter_hits += 1;
                report.expectation_held += 1;
            }
            Outcome::ExpectUnknown => {
                report.filter_hits += 1;
                report.unknowns.push(Unknown { key: c.key.clone(), property: cfg.expect.clone() });
            }
            Outcome::Violated(v) => {
                report.filter_hits += 1;
                report.violations.push(v);
            }
        }
    }
    if cfg.timing {
        report.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(filter: &[&str], expect: &str) -> SearchConfig {
        let mut c = SearchConfig::new(Field::prime(2).unwrap());
        c.max_dim_r = 3;
        c.max_dim_s = 3;
        c.filter = filter.iter().map(|s| s.to_string()).collect();
        c.expect = expect.into();
        c.random_algebras = 20;
        c.timing = false;
        c.budget = 1_000_000;
        c
    }

    #[test]
    fn frobenius_does_not_imply_separable() {
        let mut c = small(&["frobenius"], "separable");
        c.jobs = 1;
        let r = search(&c).unwrap();
        assert!(!r.violations.is_empty());
        assert!(r.violations.iter().all(|v| v["reverified"] == true));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut c = small(&["split"], "separable");
        c.jobs = 1;
        let a = serde_json::to_value(search(&c).unwrap()).unwrap();
        c.jobs = 4;
        let b = serde_json::to_value(search(&c).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_count_properties() {
        let c = small(&["projection_count"], "frobenius");
        assert!(matches!(search(&c), Err(Error::BadParams(_))));
    }

    #[test]
    fn builtin_list_over_rationals_is_small_and_valid() {
        let l = builtin_algebras(&Field::Rationals, 4);
        assert!(l.len() > 10);
        assert!(l.iter().all(|(_, a)| a.dim() <= 4));
    }
}
