//! The verification suite run by `verify-paper` and the acceptance test:
//! numbered criteria over the catalog, random instances and brute-force
//! oracles, plus one row per catalog entry comparing the deciders with the
//! entry's expected property vector.

use std::collections::BTreeMap;
use std::fmt::{Debug, Write as _};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{ideal_generated, trivial_extension, AdjoinedBimodule, Algebra, Ideal};
use crate::catalog::{self, check_entry, CatalogEntry, STANDARD};
use crate::deciders::{
    check_bimodule, check_extension, enumerate_automorphisms, map_maybe_parallel, twisted_frobenius, BimoduleContext,
    Config, Count, ExtContext, ReportOptions, Verdict, BIMODULE_PROPERTIES, EXTENSION_PROPERTIES,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::Object;
use crate::linalg::{unit_vec, Mat, Subspace, Vector};
use crate::modlin::{in_add, is_qf_ring, trivial_extension_pair, Extension, Pattern, Side};
use crate::oracle::{self, Bits, Presented};
use crate::search::{builtin_algebras, candidate_extensions, search, SearchConfig};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: String,
    pub title: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// criterion numbers (`"1"`…`"11"`) and/or `"catalog"`; all when `None`
    pub only: Option<Vec<String>>,
    /// catalog name → object used instead of the built-in one
    pub replacements: BTreeMap<String, Object>,
    pub budget: u64,
    pub parallel: bool,
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            only: None,
            replacements: BTreeMap::new(),
            budget: crate::deciders::DEFAULT_BUDGET,
            parallel: true,
            timing: true,
        }
    }
}

impl SuiteOptions {
    fn cfg(&self) -> Config {
        Config { budget: self.budget }
    }

    fn selected(&self, id: &str) -> bool {
        self.only.as_ref().map_or(true, |o| o.iter().any(|s| s == id))
    }
}

pub const TITLES: [&str; 11] = [
    "F2 x F2 over F2: split, separable, Frobenius; 2 projections, 1 Frobenius hom",
    "M2(F2) over T2(F2): projective, H-separable, not Frobenius, not QF, not twisted Frobenius",
    "T2 over diagonal (F2 and Q): split, projective, not separable, not Frobenius",
    "group algebra pairs: separable iff the characteristic misses the index",
    "S + I in R + I is separable iff S in R is (50 random instances)",
    "split exact sequences: separable forces J^2 = J, nilpotent J forces J = 0",
    "bimodule deciders agree with extension deciders and with each other",
    "implication lattice holds on catalog and random instances",
    "deciders agree with brute-force oracles over F2",
    "search F2, dim R <= 4: biseparable => Frobenius, >= 100 hits, 0 violations",
    "every row of the suite passes",
];

/// Collects named comparisons; the first few failures make up the detail.
#[derive(Default)]
struct Checks {
    n: usize,
    fails: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn eq<T: PartialEq + Debug>(&mut self, what: &str, got: T, want: T) {
        self.n += 1;
        if got != want {
            self.fails.push(format!("{what}: expected {want:?}, got {got:?}"));
        }
    }

    fn truth(&mut self, what: &str, ok: bool) {
        self.n += 1;
        if !ok {
            self.fails.push(what.to_string());
        }
    }

    fn within(&mut self, ms: u128, limit_ms: u128) {
        self.truth(&format!("took {ms} ms, limit {limit_ms} ms"), ms < limit_ms);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> (bool, String) {
        if self.fails.is_empty() {
            let mut d = format!("{} checks", self.n);
            for n in &self.notes {
                let _ = write!(d, "; {n}");
            }
            (true, d)
        } else {
            let shown: Vec<&str> = self.fails.iter().take(5).map(String::as_str).collect();
            let more = if self.fails.len() > 5 { format!(" (+{} more)", self.fails.len() - 5) } else { String::new() };
            (false, format!("{}/{} checks failed: {}{more}", self.fails.len(), self.n, shown.join("; ")))
        }
    }
}

fn f2() -> Field {
    Field::prime(2).expect("2 is prime")
}

fn entry(name: &str, opts: &SuiteOptions) -> Result<CatalogEntry> {
    let mut e = catalog::build(name)?;
    if let Some(obj) = opts.replacements.get(name).or_else(|| opts.replacements.get(&e.name)) {
        e.object = obj.clone();
    }
    Ok(e)
}

fn extension_of(e: &CatalogEntry) -> Result<Extension> {
    match &e.object {
        Object::Extension(x) => Ok(x.clone()),
        Object::Bimodule(_) => Err(Error::BadParams(format!("{} is not an extension", e.name))),
    }
}

fn is_small_f2(ext: &Extension, max_dim: usize) -> bool {
    ext.field() == &f2() && ext.r().dim() <= max_dim
}

// ---------------------------------------------------------------------------
// criteria 1–4: catalog counterexamples

fn c1(opts: &SuiteOptions) -> Result<Checks> {
    let start = Instant::now();
    let mut ck = Checks::default();
    let ext = extension_of(&entry("z2z2_over_z2", opts)?)?;
    let ctx = ExtContext::new(ext.clone(), opts.cfg());
    ck.eq("split", ctx.split().verdict, Verdict::True);
    ck.eq("separable", ctx.separable().verdict, Verdict::True);
    let frob = ctx.frobenius();
    ck.eq("frobenius", frob.verdict, Verdict::True);
    ck.eq("projection_count", ctx.count_split_projections(), Count::Finite(2));
    ck.eq("frobenius_hom_count", ctx.count_frobenius_homs()?, Count::Finite(1));
    if let Some(sys) = &frob.witness {
        let f = ext.field();
        let restricts_to_id = sys.e.mul(f, ext.iota()) == Mat::identity(f, ext.s().dim());
        ck.truth("Frobenius homomorphism restricts to the identity on S, so it is a split projection", !restricts_to_id);
        if is_small_f2(&ext, 4) {
            let projections = oracle::split_projections(&ext);
            ck.truth("Frobenius homomorphism appears among the enumerated split projections", !projections.contains(&Bits::from_mat(&sys.e)));
        }
    }
    ck.within(start.elapsed().as_millis(), 1_000);
    Ok(ck)
}

fn c2(opts: &SuiteOptions) -> Result<Checks> {
    let start = Instant::now();
    let mut ck = Checks::default();
    let ext = extension_of(&entry("matrix_over_triangular", opts)?)?;
    let ctx = ExtContext::new(ext.clone(), opts.cfg());
    ck.eq("fgp_left", ctx.fgp_left().verdict, Verdict::True);
    ck.eq("fgp_right", ctx.fgp_right().verdict, Verdict::True);
    ck.eq("h_separable", ctx.h_separable().verdict, Verdict::True);
    ck.eq("separable", ctx.separable().verdict, Verdict::True);
    ck.eq("frobenius", ctx.frobenius().verdict, Verdict::False);
    ck.eq("qf_left", ctx.qf_left().verdict, Verdict::False);
    ck.eq("qf_right", ctx.qf_right().verdict, Verdict::False);
    let autos = enumerate_automorphisms(ext.s(), opts.budget)?;
    ck.truth("no automorphisms of S found", !autos.is_empty());
    for (i, beta) in autos.iter().enumerate() {
        ck.eq(&format!("twisted_frobenius for automorphism #{i}"), twisted_frobenius(&ctx, beta)?.verdict, Verdict::False);
    }
    ck.note(format!("{} automorphisms of S", autos.len()));
    ck.within(start.elapsed().as_millis(), 10_000);
    Ok(ck)
}

fn c3(opts: &SuiteOptions) -> Result<Checks> {
    let start = Instant::now();
    let mut ck = Checks::default();
    for name in ["triangular_over_diagonal", "triangular_over_diagonal:field=Q"] {
        let ext = extension_of(&entry(name, opts)?)?;
        let ctx = ExtContext::new(ext.clone(), opts.cfg());
        ck.eq(&format!("{name} split"), ctx.split().verdict, Verdict::True);
        ck.eq(&format!("{name} fgp_left"), ctx.fgp_left().verdict, Verdict::True);
        ck.eq(&format!("{name} fgp_right"), ctx.fgp_right().verdict, Verdict::True);
        ck.eq(&format!("{name} frobenius"), ctx.frobenius().verdict, Verdict::False);
        ck.eq(&format!("{name} separable"), ctx.separable().verdict, Verdict::False);
        ck.eq(&format!("{name}: R is a QF ring"), is_qf_ring(ext.r()), false);
    }
    ck.within(start.elapsed().as_millis(), 5_000);
    Ok(ck)
}

fn c4(opts: &SuiteOptions) -> Result<Checks> {
    let start = Instant::now();
    let mut ck = Checks::default();
    let cases: [(&str, &[(&str, bool)]); 4] = [
        ("group_pair:g=C2,h=0,field=F3", &[("split", true), ("separable", true), ("frobenius", true)]),
        ("group_pair:g=C2,h=0,field=F2", &[("split", true), ("frobenius", true), ("separable", false)]),
        ("group_pair:g=S3,h=0+1+2,field=F2", &[("separable", false), ("split", true)]),
        ("group_pair:g=S3,h=0+1+2,field=F3", &[("separable", true)]),
    ];
    for (name, want) in cases {
        let ctx = ExtContext::new(extension_of(&entry(name, opts)?)?, opts.cfg());
        for &(p, b) in want {
            let got = match p {
                "split" => ctx.split().verdict,
                "separable" => ctx.separable().verdict,
                _ => ctx.frobenius().verdict,
            };
            ck.eq(&format!("{name} {p}"), got, Verdict::from_bool(b));
        }
    }
    ck.within(start.elapsed().as_millis(), 10_000);
    Ok(ck)
}

// ---------------------------------------------------------------------------
// criteria 5–6: trivial extensions and split exact sequences

/// Every vector of `F_q^n`, in index order.
fn elements(f: &Field, n: usize) -> Vec<Vector> {
    let q = f.order().expect("finite field");
    (0..q.pow(n as u32))
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
}

/// All two-sided ideals of a small algebra over a finite field: principal
/// ideals closed under sums.
fn all_ideals(a: &Algebra) -> Vec<Ideal> {
    let f = a.field();
    let mut out: Vec<Ideal> = Vec::new();
    for x in elements(f, a.dim()) {
        let i = ideal_generated(a, &[x]);
        if !out.contains(&i) {
            out.push(i);
        }
    }
    loop {
        let mut added = false;
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                let s = Ideal { space: out[i].space.sum(f, &out[j].space) };
                if !out.contains(&s) {
                    out.push(s);
                    added = true;
                }
            }
        }
        if !added {
            return out;
        }
    }
}

/// An ideal `J` of `R` as a bimodule over `R`, multiplied as inside `R` or
/// with `J·J = 0`.
fn ideal_bimodule(r: &Algebra, j: &Ideal, with_product: bool) -> AdjoinedBimodule {
    let f = r.field();
    let basis = j.space.basis();
    let d = basis.len();
    let coords = |v: &Vector| j.space.coords(f, v).expect("ideal is closed");
    let ops = |left: bool| -> Vec<Mat> {
        (0..r.dim())
            .map(|i| {
                let e = r.basis_vec(i);
                let cols: Vec<Vector> =
                    basis.iter().map(|b| coords(&if left { r.mul(&e, b) } else { r.mul(b, &e) })).collect();
                Mat::from_cols(d, &cols)
            })
            .collect()
    };
    let product =
        (0..d * d).map(|k| if with_product { coords(&r.mul(&basis[k / d], &basis[k % d])) } else { vec![f.zero(); d] }).collect();
    AdjoinedBimodule { dim: d, left: ops(true), right: ops(false), product }
}

fn sampled_extensions(max_dim: usize, random: usize, seed: u64, opts: &SuiteOptions) -> Result<Vec<(String, Extension)>> {
    let mut cfg = SearchConfig::new(f2());
    cfg.max_dim_r = max_dim;
    cfg.max_dim_s = max_dim;
    cfg.random_algebras = random;
    cfg.seed = seed;
    cfg.budget = opts.budget;
    cfg.jobs = if opts.parallel { 0 } else { 1 };
    Ok(candidate_extensions(&cfg)?.into_iter().map(|(k, _, e)| (k, e)).collect())
}

fn c5(opts: &SuiteOptions) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let base = sampled_extensions(4, 60, 5, opts)?;
    // alternate separable and non-separable bases so both directions are exercised
    let verdicts = map_maybe_parallel(&base, opts.parallel, |(_, e)| ExtContext::new(e.clone(), opts.cfg()).separable().verdict);
    let mut pools: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, v) in verdicts.iter().enumerate() {
        match v {
            Verdict::True => pools[0].push(i),
            Verdict::False => pools[1].push(i),
            Verdict::Unknown => ck.truth(&format!("{}: separability undecided", base[i].0), false),
        }
    }
    if pools.iter().any(Vec::is_empty) {
        ck.truth("need both separable and non-separable base extensions", false);
        return Ok(ck);
    }
    let mut instances = Vec::new();
    for k in 0..50 {
        let i = *pools[k % 2].choose(&mut rng).expect("nonempty");
        let (key, ext) = &base[i];
        let r = ext.r();
        let ideals: Vec<Ideal> = all_ideals(r).into_iter().filter(|j| j.dim() > 0).collect();
        let j = ideals.choose(&mut rng).expect("R is a nonzero ideal of itself");
        let product = k % 4 < 2;
        let kind = format!("{}-dim ideal, {}", j.dim(), if product { "product" } else { "square zero" });
        instances.push((format!("{key} with {kind}"), i, ideal_bimodule(r, j, product)));
    }
    let results = map_maybe_parallel(&instances, opts.parallel, |(name, i, bim)| -> Result<(String, Verdict, Verdict)> {
        let big = trivial_extension_pair(&base[*i].1, bim)?;
        Ok((name.clone(), verdicts[*i], ExtContext::new(big, opts.cfg()).separable().verdict))
    });
    let mut separable = 0;
    for res in results {
        let (name, small, big) = res?;
        ck.eq(&format!("{name}: separable(A/T)"), big, small);
        ck.truth(&format!("{name}: undecided"), small != Verdict::Unknown);
        separable += usize::from(small == Verdict::True);
    }
    ck.note(format!("50 instances, {separable} separable"));
    Ok(ck)
}

/// `S ⊆ S ⊕ I`, the section of the projection killing `I`.
fn trivial_section(s: &Arc<Algebra>, i: &AdjoinedBimodule) -> Result<(Extension, Ideal)> {
    let f = s.field();
    let a = Arc::new(trivial_extension(s, i)?);
    let n = a.dim();
    let iota = Mat::from_cols(n, &(0..s.dim()).map(|j| unit_vec(f, n, j)).collect::<Vec<_>>());
    let kernel = Subspace::span(f, n, &(s.dim()..n).map(|j| unit_vec(f, n, j)).collect::<Vec<_>>());
    Ok((Extension::new(s.clone(), a, iota)?, Ideal { space: kernel }))
}

fn c6(opts: &SuiteOptions) -> Result<Checks> {
    let mut ck = Checks::default();
    let f = f2();
    // (S ⊆ A, J): J an ideal of A complementary to S
    let mut seqs: Vec<(String, Extension, Ideal)> = Vec::new();
    for (key, ext) in sampled_extensions(4, 60, 6, opts)? {
        let image = Subspace::span(&f, ext.r().dim(), &(0..ext.s().dim()).map(|j| ext.image_basis(j)).collect::<Vec<_>>());
        for j in all_ideals(ext.r()) {
            if j.dim() > 0 && j.dim() + image.dim() == ext.r().dim() && image.intersect(&f, &j.space).dim() == 0 {
                seqs.push((key.clone(), ext.clone(), j));
            }
        }
    }
    let found = seqs.len();
    // constructed: S ⊆ S ⊕ I for small S, with idempotent and nilpotent I
    for (name, s) in builtin_algebras(&f, 2) {
        let s = Arc::new(s);
        for (iname, i) in [("regular", AdjoinedBimodule::regular(&s, true)), ("square_zero", AdjoinedBimodule::regular(&s, false))] {
            let (ext, j) = trivial_section(&s, &i)?;
            seqs.push((format!("{name} in {name} + {iname}"), ext, j));
        }
    }
    let results = map_maybe_parallel(&seqs, opts.parallel, |(_, ext, j)| {
        let ctx = ExtContext::new(ext.clone(), opts.cfg());
        let (sep, split) = (ctx.separable().verdict, ctx.split().verdict);
        let idempotent = j.product(ext.r(), j) == *j;
        (sep, split, idempotent, j.is_nilpotent(ext.r()))
    });
    let (mut separable, mut nilpotent) = (0, 0);
    for ((name, _, j), (sep, split, idempotent, nil)) in seqs.iter().zip(results) {
        ck.truth(&format!("{name}: separability undecided"), sep != Verdict::Unknown);
        if sep == Verdict::True {
            separable += 1;
            ck.truth(&format!("{name}: separable but J^2 != J (dim J = {})", j.dim()), idempotent);
        }
        if nil {
            nilpotent += 1;
            // J ≠ 0 here, so split and separable together must fail
            ck.truth(&format!("{name}: nilpotent J != 0 yet split and separable"), !(sep == Verdict::True && split == Verdict::True));
        }
    }
    ck.truth("no separable sequence exercised", separable > 0);
    ck.truth("no nilpotent kernel exercised", nilpotent > 0);
    ck.note(format!("{} sequences ({found} found in random extensions), {separable} separable, {nilpotent} with nilpotent kernel", seqs.len()));
    Ok(ck)
}

// ---------------------------------------------------------------------------
// criteria 7–8: cross-decider agreement and the implication lattice

fn instance_set(opts: &SuiteOptions) -> Result<Vec<(String, Object)>> {
    let mut out = Vec::new();
    for spec in STANDARD {
        let e = entry(spec, opts)?;
        out.push((e.name, e.object));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = sampled_extensions(4, 200, 7, opts)?;
    for (key, ext) in pool.choose_multiple(&mut rng, 100) {
        out.push((key.clone(), Object::Extension(ext.clone())));
    }
    Ok(out)
}

fn bimodule_discrepancies(name: &str, ctx: &BimoduleContext) -> Vec<String> {
    let mut out = Vec::new();
    let mut cmp = |what: &str, a: Verdict, b: Verdict| {
        if a != b || a == Verdict::Unknown {
            out.push(format!("{name}: {what} ({} vs {})", a.as_str(), b.as_str()));
        }
    };
    let sep = ctx.separable().verdict;
    if let Some(d) = ctx.sep_by_dual_basis() {
        cmp("dual-basis criterion vs separable", d.verdict, sep);
    }
    if let Some(d) = ctx.sep_by_endomorphisms() {
        cmp("endomorphism criterion vs separable", d.verdict, sep);
    }
    if let (Some(a), Some(b)) = (ctx.tensor_sep_by_endomorphisms(), ctx.tensor_sep_by_dual_basis()) {
        cmp("tensor-side criteria", a.verdict, b.verdict);
        cmp("hom-functor element vs tensor-side criterion", ctx.hom_sep_element().verdict, a.verdict);
    }
    if let Some(d) = ctx.frobenius_pair_data() {
        cmp("Frobenius pair data vs frobenius", d.verdict, ctx.frobenius().verdict);
    }
    if let Some(d) = ctx.sep_given_frobenius_data() {
        cmp("criterion given Frobenius data vs separable", d.verdict, sep);
    }
    out
}

fn c7(opts: &SuiteOptions, instances: &[(String, Object)]) -> Result<Checks> {
    let mut ck = Checks::default();
    let per = map_maybe_parallel(instances, opts.parallel, |(name, obj)| -> (usize, Vec<String>) {
        match obj {
            Object::Extension(ext) => {
                let ctx = ExtContext::new(ext.clone(), opts.cfg());
                let rrs = BimoduleContext::new(ctx.natural(Pattern::RRS), opts.cfg());
                let srr = BimoduleContext::new(ctx.natural(Pattern::SRR), opts.cfg());
                let mut out = Vec::new();
                let (sep, split) = (ctx.separable().verdict, ctx.split().verdict);
                if rrs.separable().verdict != sep || sep == Verdict::Unknown {
                    out.push(format!("{name}: _R R_S separable {} but extension separable {}", rrs.separable().verdict.as_str(), sep.as_str()));
                }
                if srr.separable().verdict != split || split == Verdict::Unknown {
                    out.push(format!("{name}: _S R_R separable {} but extension split {}", srr.separable().verdict.as_str(), split.as_str()));
                }
                out.extend(bimodule_discrepancies(&format!("{name} _R R_S"), &rrs));
                out.extend(bimodule_discrepancies(&format!("{name} _S R_R"), &srr));
                (2 + 2 * 6, out)
            }
            Object::Bimodule(b) => (6, bimodule_discrepancies(name, &BimoduleContext::new(b.clone(), opts.cfg()))),
        }
    });
    for (n, fails) in per {
        ck.n += n;
        ck.fails.extend(fails);
    }
    ck.note(format!("{} instances", instances.len()));
    Ok(ck)
}

fn c8(opts: &SuiteOptions, instances: &[(String, Object)]) -> Result<Checks> {
    let mut ck = Checks::default();
    let ext_props: Vec<String> = EXTENSION_PROPERTIES.iter().map(|s| s.to_string()).collect();
    let bim_props: Vec<String> = BIMODULE_PROPERTIES.iter().map(|s| s.to_string()).collect();
    let ropts = ReportOptions { witnesses: true, timing: false, parallel: false };
    let per = map_maybe_parallel(instances, opts.parallel, |(name, obj)| -> Result<Vec<String>> {
        let r = match obj {
            Object::Extension(ext) => check_extension(name, &ExtContext::new(ext.clone(), opts.cfg()), &ext_props, ropts)?,
            Object::Bimodule(b) => check_bimodule(name, &BimoduleContext::new(b.clone(), opts.cfg()), &bim_props, ropts)?,
        };
        let mut out: Vec<String> = r.implication_violations.iter().map(|v| format!("{name}: {v}")).collect();
        if r.any_unknown() {
            out.push(format!("{name}: some verdict is unknown"));
        }
        Ok(out)
    });
    for fails in per {
        ck.n += 1;
        ck.fails.extend(fails?);
    }
    ck.note(format!("{} instances, witnesses re-verified", instances.len()));
    Ok(ck)
}

// ---------------------------------------------------------------------------
// criteria 9–10: oracles and the search

fn c9(opts: &SuiteOptions) -> Result<Checks> {
    let start = Instant::now();
    let mut ck = Checks::default();

    // summand decisions against Krull–Schmidt brute force
    let mut pairs = 0;
    for p in Presented::standard() {
        let mods: Vec<Vec<Bits>> = (1..=3).flat_map(|m| p.modules(m)).collect();
        let solver: Vec<_> = mods.iter().map(|m| p.to_bimodule(m)).collect();
        let grid: Vec<(usize, usize)> = (0..mods.len()).flat_map(|i| (0..mods.len()).map(move |j| (i, j))).collect();
        let res = map_maybe_parallel(&grid, opts.parallel, |&(i, j)| -> Result<bool> {
            let fast = in_add(&solver[i], &solver[j], Side::Left)?.is_some();
            Ok(fast == oracle::in_add_brute(&mods[i], &mods[j]))
        });
        for (&(i, j), ok) in grid.iter().zip(res) {
            ck.truth(&format!("{}: in_add disagrees with brute force on modules #{i}, #{j}", p.name), ok?);
        }
        pairs += grid.len();
    }

    // extensions with dim R ≤ 3 against exhaustive enumeration
    let f = f2();
    let mut exts = sampled_extensions(3, 60, 9, opts)?;
    for (name, a) in builtin_algebras(&f, 3) {
        exts.push((format!("{name} over itself"), Extension::identity(Arc::new(a))));
    }
    if let Object::Extension(e) = catalog::build("matrix_over_triangular")?.object {
        exts.push(("M2 over T2".into(), e));
    }
    let res = map_maybe_parallel(&exts, opts.parallel, |(name, ext)| {
        let ctx = ExtContext::new(ext.clone(), opts.cfg());
        let mut out = Vec::new();
        let tensor = oracle::tensor_dim(ext);
        if ctx.tensor_square().dim() != tensor {
            out.push(format!("{name}: dim R⊗_S R {} vs oracle {tensor}", ctx.tensor_square().dim()));
        }
        if ext.r().dim() <= 3 {
            let projections = oracle::split_projections(ext).len();
            let sep = oracle::separability_element(ext).is_some();
            if ctx.separable().verdict != Verdict::from_bool(sep) {
                out.push(format!("{name}: separable {} vs oracle {sep}", ctx.separable().verdict.as_str()));
            }
            if ctx.split().verdict != Verdict::from_bool(projections > 0) {
                out.push(format!("{name}: split {} vs oracle {projections} projections", ctx.split().verdict.as_str()));
            }
            if ctx.count_split_projections() != Count::Finite(projections as u128) {
                out.push(format!("{name}: {} projections vs oracle {projections}", ctx.count_split_projections()));
            }
        }
        out
    });
    for fails in res {
        ck.n += 4;
        ck.fails.extend(fails);
    }
    let m2t2 = exts.iter().find(|(n, _)| n == "M2 over T2").expect("pushed above");
    ck.eq("dim M2 ⊗_T2 M2 (oracle)", oracle::tensor_dim(&m2t2.1), 4);

    // Frobenius homomorphisms of R over the field against all functionals
    let mut algebras: Vec<(String, Arc<Algebra>)> = builtin_algebras(&f, 4).into_iter().map(|(n, a)| (n, Arc::new(a))).collect();
    algebras.extend(exts.iter().filter(|(_, e)| e.r().dim() <= 3).map(|(n, e)| (format!("R of {n}"), e.r().clone())));
    let res = map_maybe_parallel(&algebras, opts.parallel, |(name, a)| -> Result<Option<String>> {
        let got = ExtContext::new(Extension::over_base_field(a.clone()), opts.cfg()).count_frobenius_homs()?;
        let want = oracle::frobenius_forms(a);
        Ok((got != Count::Finite(want as u128)).then(|| format!("{name}: {got} Frobenius homs vs oracle {want}")))
    });
    for r in res {
        ck.n += 1;
        ck.fails.extend(r?);
    }
    ck.note(format!("{pairs} module pairs, {} extensions, {} algebras", exts.len(), algebras.len()));
    ck.within(start.elapsed().as_millis(), 300_000);
    Ok(ck)
}

fn c10(opts: &SuiteOptions) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut cfg = SearchConfig::new(f2());
    cfg.budget = opts.budget;
    cfg.jobs = if opts.parallel { 0 } else { 1 };
    let start = Instant::now();
    let r = search(&cfg)?;
    ck.eq("violations", r.violations.len(), 0);
    ck.eq("unknown verdicts", r.unknowns.len(), 0);
    ck.truth(&format!("only {} filter hits", r.filter_hits), r.filter_hits >= 100);
    ck.within(start.elapsed().as_millis(), 30 * 60 * 1000);
    ck.note(format!("{} candidates, {} biseparable, all Frobenius", r.candidates, r.filter_hits));
    Ok(ck)
}

// ---------------------------------------------------------------------------
// driver

fn catalog_rows(opts: &SuiteOptions) -> Result<Vec<CriterionResult>> {
    let entries: Vec<CatalogEntry> = STANDARD.iter().map(|s| entry(s, opts)).collect::<Result<_>>()?;
    let ropts = ReportOptions { witnesses: true, timing: false, parallel: false };
    let rows = map_maybe_parallel(&entries, opts.parallel, |e| -> Result<CriterionResult> {
        let start = Instant::now();
        let (report, mismatches) = check_entry(e, opts.cfg(), ropts)?;
        let mut fails: Vec<String> = mismatches
            .iter()
            .map(|m| format!("{}: expected {}, got {}", m.property, json!(m.expected), m.actual))
            .collect();
        fails.extend(report.implication_violations.iter().cloned());
        Ok(CriterionResult {
            id: format!("catalog:{}", e.name),
            title: e.anchor.to_string(),
            pass: fails.is_empty(),
            detail: if fails.is_empty() { format!("{} properties as expected", e.expected.len()) } else { fails.join("; ") },
            ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
        })
    });
    rows.into_iter().collect()
}

fn row(id: usize, opts: &SuiteOptions, run: impl FnOnce() -> Result<Checks>) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match run() {
        Ok(ck) => ck.finish(),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id: id.to_string(),
        title: TITLES[id - 1].to_string(),
        pass,
        detail,
        ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs one numbered criterion (1–10) on its own.
pub fn run_criterion(id: usize, opts: &SuiteOptions) -> CriterionResult {
    let instances = || instance_set(opts);
    row(id, opts, || match id {
        1 => c1(opts),
        2 => c2(opts),
        3 => c3(opts),
        4 => c4(opts),
        5 => c5(opts),
        6 => c6(opts),
        7 => c7(opts, &instances()?),
        8 => c8(opts, &instances()?),
        9 => c9(opts),
        10 => c10(opts),
        _ => Err(Error::BadParams(format!("no criterion {id}"))),
    })
}

/// Runs the selected criteria and catalog rows; criterion 11 summarizes
/// every other row that ran.
pub fn run(opts: &SuiteOptions) -> Result<Vec<CriterionResult>> {
    if let Some(only) = &opts.only {
        for s in only {
            let ok = s == "catalog" || s.parse::<usize>().is_ok_and(|n| (1..=11).contains(&n));
            if !ok {
                return Err(Error::BadParams(format!("unknown suite selection `{s}`")));
            }
        }
    }
    let mut rows = Vec::new();
    let mut shared: Option<Vec<(String, Object)>> = None;
    for id in 1..=10 {
        if !opts.selected(&id.to_string()) {
            continue;
        }
        let r = match id {
            7 | 8 => {
                if shared.is_none() {
                    shared = Some(instance_set(opts)?);
                }
                let inst = shared.as_deref().expect("just built");
                row(id, opts, || if id == 7 { c7(opts, inst) } else { c8(opts, inst) })
            }
            _ => run_criterion(id, opts),
        };
        rows.push(r);
    }
    if opts.selected("catalog") {
        rows.extend(catalog_rows(opts)?);
    }
    if opts.selected("11") {
        let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
        rows.push(CriterionResult {
            id: "11".into(),
            title: TITLES[10].into(),
            pass: failed.is_empty(),
            detail: if failed.is_empty() { format!("{} rows pass", rows.len()) } else { format!("failing: {}", failed.join(", ")) },
            ms: None,
        });
    }
    Ok(rows)
}

pub fn rows_json(rows: &[CriterionResult]) -> Value {
    let passed = rows.iter().filter(|r| r.pass).count();
    json!({ "ok": passed == rows.len(), "passed": passed, "total": rows.len(), "rows": rows })
}

pub fn render_table(rows: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in rows {
        let ms = r.ms.map(|m| format!(" [{m} ms]")).unwrap_or_default();
        let _ = writeln!(out, "{} {:<44} {}{ms}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.title);
        if !r.pass || !r.id.starts_with("catalog:") {
            let _ = writeln!(out, "     {}", r.detail);
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{passed}/{} rows pass", rows.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{diagonal, truncated_polynomial, upper_triangular};

    #[test]
    fn ideal_enumeration_on_known_lattices() {
        let f = f2();
        // k^3: one ideal per subset of the idempotents
        assert_eq!(all_ideals(&diagonal(&f, 3)).len(), 8);
        // k[x]/(x^3): a chain 0 ⊂ (x^2) ⊂ (x) ⊂ R
        assert_eq!(all_ideals(&truncated_polynomial(&f, 3)).len(), 4);
        // T_2: 0, k e12, e11 T, T e22 and T
        let t2 = upper_triangular(&f, 2);
        let ideals = all_ideals(&t2);
        assert_eq!(ideals.len(), 5);
        assert!(ideals.iter().all(|i| crate::algebra::is_two_sided_closed(&t2, &i.space)));
    }

    #[test]
    fn selection_is_validated() {
        let opts = SuiteOptions { only: Some(vec!["12".into()]), ..SuiteOptions::default() };
        assert!(run(&opts).is_err());
        let opts = SuiteOptions { only: Some(vec!["1".into(), "11".into()]), ..SuiteOptions::default() };
        let rows = run(&opts).unwrap();
        assert_eq!(rows.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["1", "11"]);
        assert!(rows.iter().all(|r| r.pass));
    }
}
