//! Property reports: evaluate a list of properties, re-verify every witness
//! independently, and check the known implications between verdicts.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::bimodule::{BimoduleContext, CriterionWitness};
use super::extension::ExtContext;
use super::witness::{dual_basis_json, summand_json};
use super::{CertificateKind, Count, Decision, Verdict};
use crate::error::{Error, Result};
use crate::modlin::{in_add, Bimodule, Pattern, Side};
use crate::radical::is_semisimple;

/// Properties of an extension `S → R`.
pub const EXTENSION_PROPERTIES: &[&str] = &[
    "split",
    "separable",
    "fgp_left",
    "fgp_right",
    "frobenius",
    "qf_left",
    "qf_right",
    "qf",
    "h_separable",
    "centrally_projective",
    "biseparable",
    "axiom_compatible",
    "projection_count",
    "frobenius_hom_count",
];

/// Properties of a `(T,R)`-bimodule.
pub const BIMODULE_PROPERTIES: &[&str] = &[
    "separable",
    "fgp_left",
    "fgp_right",
    "frobenius",
    "biseparable",
    "sep_by_dual_basis",
    "sep_by_endomorphisms",
    "tensor_sep_by_endomorphisms",
    "tensor_sep_by_dual_basis",
    "hom_sep_element",
    "frobenius_pair_data",
    "sep_given_frobenius_data",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub witnesses: bool,
    pub timing: bool,
    pub parallel: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { witnesses: false, timing: true, parallel: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyEntry {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_kind: Option<CertificateKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    /// `Some(false)` if a witness was produced but did not re-verify
    #[serde(skip)]
    pub witness_ok: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub subject: String,
    pub properties: BTreeMap<String, PropertyEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_applicable: Vec<String>,
    pub implication_violations: Vec<String>,
}

impl PropertyReport {
    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.properties.get(name).map(|e| e.verdict)
    }

    pub fn any_unknown(&self) -> bool {
        self.properties.values().any(|e| e.verdict == Verdict::Unknown)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn entry<W>(d: &Decision<W>, verified: Option<bool>, witness: Option<Value>) -> PropertyEntry {
    PropertyEntry {
        verdict: d.verdict,
        count: None,
        witness,
        certificate_kind: d.certificate,
        reason: d.reason.clone(),
        ms: None,
        witness_ok: verified,
    }
}

fn verdict_entry(v: Verdict) -> PropertyEntry {
    PropertyEntry { verdict: v, count: None, witness: None, certificate_kind: None, reason: None, ms: None, witness_ok: None }
}

fn count_value(c: Count) -> Value {
    match c {
        Count::Finite(n) => u64::try_from(n).map(|v| json!(v)).unwrap_or_else(|_| json!(n.to_string())),
        Count::Infinite { dim } => json!({ "infinite": true, "dim": dim }),
    }
}

/// Resolves `"all"` and validates names against `known`.
pub fn parse_props(spec: &str, known: &[&str]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for p in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if p == "all" {
            out.extend(known.iter().map(|s| s.to_string()));
        } else if known.contains(&p) {
            out.push(p.to_string());
        } else {
            return Err(Error::BadParams(format!("unknown property `{p}`")));
        }
    }
    out.dedup();
    Ok(out)
}

pub fn extension_property(ctx: &ExtContext, name: &str, witnesses: bool) -> Result<PropertyEntry> {
    let ext = ctx.extension();
    let f = ext.field();
    let n = ext.r().dim();
    let w = |v: Value| if witnesses { Some(v) } else { None };
    let summand = |d: Decision<crate::modlin::SummandWitness>, m: &Bimodule, target: &Bimodule| {
        let ok = d.witness.as_ref().map(|x| x.verify(m, target, Side::Both));
        let j = d.witness.as_ref().and_then(|x| w(summand_json(f, x)));
        entry(&d, ok, j)
    };
    Ok(match name {
        "split" => {
            let d = ctx.split();
            let ok = d.witness.as_ref().map(|x| x.verify(ext));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(f))))
        }
        "separable" => {
            let d = ctx.separable();
            let ok = d.witness.as_ref().map(|x| x.verify(ext));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(f, n))))
        }
        "fgp_right" => {
            let d = ctx.fgp_right();
            let ok = d.witness.as_ref().map(|x| x.verify_right(&ctx.natural(Pattern::RRS)));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(dual_basis_json(f, x))))
        }
        "fgp_left" => {
            let d = ctx.fgp_left();
            let ok = d.witness.as_ref().map(|x| x.verify_left(&ctx.natural(Pattern::SRR)));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(dual_basis_json(f, x))))
        }
        "frobenius" => {
            let d = ctx.frobenius();
            let ok = d.witness.as_ref().map(|x| x.verify(ext));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(f))))
        }
        "qf_left" => summand(ctx.qf_left(), &ctx.right_dual().module, &ctx.natural(Pattern::SRR)),
        "qf_right" => summand(ctx.qf_right(), &ctx.left_dual().module, &ctx.natural(Pattern::RRS)),
        "qf" => verdict_entry(ctx.qf()),
        "h_separable" => summand(ctx.h_separable(), &ctx.tensor_square().module, &ctx.natural(Pattern::RRR)),
        "centrally_projective" => summand(ctx.centrally_projective(), &ctx.natural(Pattern::SRS), &ctx.natural(Pattern::SSS)),
        "biseparable" => verdict_entry(ctx.biseparable()),
        "axiom_compatible" => {
            let d = ctx.axiom_compatible();
            let ok = d.witness.as_ref().map(|x| x.verify(ext));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(f, n))))
        }
        "projection_count" => {
            let mut e = verdict_entry(Verdict::True);
            e.count = Some(count_value(ctx.count_split_projections()));
            e
        }
        "frobenius_hom_count" => match ctx.count_frobenius_homs() {
            Ok(c) => {
                let mut e = verdict_entry(Verdict::True);
                e.count = Some(count_value(c));
                e
            }
            Err(Error::BudgetExceeded(b)) => entry(&Decision::<()>::unknown(b), None, None),
            Err(e) => return Err(e),
        },
        other => return Err(Error::BadParams(format!("unknown property `{other}`"))),
    })
}

fn eval_bimodule(ctx: &BimoduleContext, name: &str, witnesses: bool) -> Result<Option<PropertyEntry>> {
    let f = ctx.module().field().clone();
    let w = |v: Value| if witnesses { Some(v) } else { None };
    let crit = |d: Option<Decision<CriterionWitness>>| {
        d.map(|d| {
            let j = d.witness.as_ref().and_then(|x| w(x.to_json(&f)));
            entry(&d, None, j)
        })
    };
    Ok(match name {
        "separable" => {
            let d = ctx.separable();
            let ok = d.witness.as_ref().map(|x| ctx.verify_separable(x));
            Some(entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(&f)))))
        }
        "fgp_left" => {
            let d = ctx.fgp_left();
            let ok = d.witness.as_ref().map(|x| x.verify_left(ctx.module()));
            Some(entry(&d, ok, d.witness.as_ref().and_then(|x| w(dual_basis_json(&f, x)))))
        }
        "fgp_right" => {
            let d = ctx.fgp_right();
            let ok = d.witness.as_ref().map(|x| x.verify_right(ctx.module()));
            Some(entry(&d, ok, d.witness.as_ref().and_then(|x| w(dual_basis_json(&f, x)))))
        }
        "frobenius" => {
            let d = ctx.frobenius();
            let ok = d.witness.as_ref().map(|x| ctx.verify_frobenius_iso(x));
            Some(entry(&d, ok, d.witness.as_ref().and_then(|x| w(super::witness::mat_json(&f, x)))))
        }
        "biseparable" => Some(verdict_entry(ctx.biseparable())),
        "sep_by_dual_basis" => crit(ctx.sep_by_dual_basis()),
        "sep_by_endomorphisms" => crit(ctx.sep_by_endomorphisms()),
        "tensor_sep_by_endomorphisms" => crit(ctx.tensor_sep_by_endomorphisms()),
        "tensor_sep_by_dual_basis" => crit(ctx.tensor_sep_by_dual_basis()),
        "hom_sep_element" => crit(Some(ctx.hom_sep_element())),
        "frobenius_pair_data" => ctx.frobenius_pair_data().map(|d| {
            let ok = d.witness.as_ref().map(|x| ctx.verify_pair(x));
            entry(&d, ok, d.witness.as_ref().and_then(|x| w(x.to_json(&f))))
        }),
        "sep_given_frobenius_data" => crit(ctx.sep_given_frobenius_data()),
        other => return Err(Error::BadParams(format!("unknown property `{other}`"))),
    })
}

fn timed<T>(timing: bool, run: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = run();
    (out, timing.then(|| start.elapsed().as_millis() as u64))
}

pub fn check_extension(subject: &str, ctx: &ExtContext, props: &[String], opts: ReportOptions) -> Result<PropertyReport> {
    let results = super::map_maybe_parallel(props, opts.parallel, |p| {
        let (e, ms) = timed(opts.timing, || extension_property(ctx, p, opts.witnesses));
        e.map(|mut e| {
            e.ms = ms;
            (p.clone(), e)
        })
    });
    let properties: BTreeMap<String, PropertyEntry> = results.into_iter().collect::<Result<_>>()?;
    let mut violations = witness_failures(&properties);
    violations.extend(extension_lattice(ctx, &properties));
    Ok(PropertyReport { subject: subject.to_string(), properties, not_applicable: Vec::new(), implication_violations: violations })
}

pub fn check_bimodule(subject: &str, ctx: &BimoduleContext, props: &[String], opts: ReportOptions) -> Result<PropertyReport> {
    let results = super::map_maybe_parallel(props, opts.parallel, |p| {
        let (e, ms) = timed(opts.timing, || eval_bimodule(ctx, p, opts.witnesses));
        e.map(|e| {
            (
                p.clone(),
                e.map(|mut e| {
                    e.ms = ms;
                    e
                }),
            )
        })
    });
    let mut properties = BTreeMap::new();
    let mut not_applicable = Vec::new();
    for r in results {
        match r? {
            (p, Some(e)) => {
                properties.insert(p, e);
            }
            (p, None) => not_applicable.push(p),
        }
    }
    let mut violations = witness_failures(&properties);
    violations.extend(bimodule_lattice(&properties));
    Ok(PropertyReport { subject: subject.to_string(), properties, not_applicable, implication_violations: violations })
}

fn witness_failures(props: &BTreeMap<String, PropertyEntry>) -> Vec<String> {
    props
        .iter()
        .filter(|(_, e)| e.witness_ok == Some(false))
        .map(|(p, _)| format!("witness for `{p}` failed independent re-verification"))
        .collect()
}

fn get(props: &BTreeMap<String, PropertyEntry>, p: &str) -> Option<bool> {
    props.get(p).and_then(|e| e.verdict.as_bool())
}

/// `a ⇒ b` over the known verdicts.
fn implies(props: &BTreeMap<String, PropertyEntry>, a: &[&str], b: &str, out: &mut Vec<String>) {
    let premises: Option<Vec<bool>> = a.iter().map(|p| get(props, p)).collect();
    if let (Some(pre), Some(false)) = (premises, get(props, b)) {
        if pre.iter().all(|&x| x) {
            out.push(format!("{} holds but {b} is false", a.join(" ∧ ")));
        }
    }
}

fn equal(props: &BTreeMap<String, PropertyEntry>, a: &str, b: &str, out: &mut Vec<String>) {
    if let (Some(x), Some(y)) = (get(props, a), get(props, b)) {
        if x != y {
            out.push(format!("{a} = {x} but {b} = {y}"));
        }
    }
}

fn extension_lattice(ctx: &ExtContext, props: &BTreeMap<String, PropertyEntry>) -> Vec<String> {
    let mut out = Vec::new();
    implies(props, &["frobenius"], "qf_left", &mut out);
    implies(props, &["frobenius"], "qf_right", &mut out);
    for side in ["qf_left", "qf_right"] {
        implies(props, &[side], "fgp_left", &mut out);
        implies(props, &[side], "fgp_right", &mut out);
    }
    implies(props, &["h_separable"], "separable", &mut out);
    for part in ["split", "separable", "fgp_left", "fgp_right"] {
        implies(props, &["biseparable"], part, &mut out);
    }
    implies(props, &["split", "separable", "fgp_left", "fgp_right"], "biseparable", &mut out);
    implies(props, &["centrally_projective", "biseparable"], "qf_left", &mut out);
    implies(props, &["centrally_projective", "biseparable"], "qf_right", &mut out);
    implies(props, &["qf_left", "qf_right"], "qf", &mut out);
    implies(props, &["qf"], "qf_left", &mut out);
    implies(props, &["qf"], "qf_right", &mut out);
    implies(props, &["axiom_compatible"], "split", &mut out);
    implies(props, &["axiom_compatible"], "separable", &mut out);

    let ext = ctx.extension();
    if get(props, "biseparable") == Some(true) {
        // all supported fields are perfect, so semisimple = separable
        if get(props, "frobenius") == Some(false) && (is_semisimple(ext.s()) || is_semisimple(ext.r())) {
            out.push("biseparable over a semisimple algebra but frobenius is false".into());
        }
        let rr = ctx.natural(Pattern::RRR);
        let right_reg = rr.forget_left();
        let r_star = ctx.right_dual().module.forget_left();
        if in_add(&right_reg, &r_star, Side::Right).ok().flatten().is_none() {
            out.push("biseparable but R_R is not a summand of copies of R*_R".into());
        }
        let left_reg = rr.forget_right();
        let star_r = ctx.left_dual().module.forget_right();
        if in_add(&left_reg, &star_r, Side::Left).ok().flatten().is_none() {
            out.push("biseparable but _R R is not a summand of copies of _R *R".into());
        }
    }
    if ext.is_bijective() {
        for (p, e) in props {
            if e.verdict != Verdict::True {
                out.push(format!("R = S but {p} is {}", e.verdict.as_str()));
            }
        }
    }
    out
}

fn bimodule_lattice(props: &BTreeMap<String, PropertyEntry>) -> Vec<String> {
    let mut out = Vec::new();
    implies(props, &["frobenius"], "fgp_left", &mut out);
    implies(props, &["frobenius"], "fgp_right", &mut out);
    for part in ["separable", "fgp_left", "fgp_right"] {
        implies(props, &["biseparable"], part, &mut out);
    }
    // each criterion is present only when its precondition holds
    equal(props, "sep_by_dual_basis", "separable", &mut out);
    equal(props, "sep_by_endomorphisms", "separable", &mut out);
    equal(props, "tensor_sep_by_endomorphisms", "tensor_sep_by_dual_basis", &mut out);
    if props.contains_key("tensor_sep_by_endomorphisms") {
        equal(props, "tensor_sep_by_endomorphisms", "hom_sep_element", &mut out);
    }
    equal(props, "frobenius_pair_data", "frobenius", &mut out);
    equal(props, "sep_given_frobenius_data", "separable", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{diagonal, upper_triangular};
    use crate::deciders::Config;
    use crate::field::Field;
    use crate::linalg::Mat;
    use crate::modlin::Extension;

    #[test]
    fn full_report_on_z2z2() {
        let f = Field::prime(2).unwrap();
        let ctx = ExtContext::new(Extension::over_base_field(Arc::new(diagonal(&f, 2))), Config { budget: 100_000 });
        let props = parse_props("all", EXTENSION_PROPERTIES).unwrap();
        let r = check_extension("z2z2", &ctx, &props, ReportOptions { witnesses: true, timing: false, parallel: true }).unwrap();
        assert!(r.implication_violations.is_empty(), "{:?}", r.implication_violations);
        assert_eq!(r.verdict("axiom_compatible"), Some(Verdict::False));
        assert_eq!(r.properties["projection_count"].count, Some(json!(2)));
        assert_eq!(r.properties["frobenius_hom_count"].count, Some(json!(1)));
        let j = r.to_json();
        assert_eq!(j["properties"]["split"]["verdict"], "true");
        assert!(j["properties"]["split"]["witness"].is_object());
        assert!(j["properties"]["split"].get("ms").is_none());
    }

    #[test]
    fn report_is_deterministic_and_parallel_agnostic() {
        let f = Field::prime(2).unwrap();
        let ext = Extension::new(
            Arc::new(diagonal(&f, 2)),
            Arc::new(upper_triangular(&f, 2)),
            Mat::from_ints(&f, 3, 2, &[1, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        let props = parse_props("all", EXTENSION_PROPERTIES).unwrap();
        let run = |parallel| {
            let ctx = ExtContext::new(ext.clone(), Config { budget: 100_000 });
            check_extension("t", &ctx, &props, ReportOptions { witnesses: true, timing: false, parallel }).unwrap().to_json()
        };
        assert_eq!(run(true), run(false));
    }

    #[test]
    fn unknown_property_is_rejected() {
        assert!(parse_props("split,bogus", EXTENSION_PROPERTIES).is_err());
    }
}
