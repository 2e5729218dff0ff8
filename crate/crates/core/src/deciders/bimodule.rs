//! Deciders for a `(T,R)`-bimodule `M`: separability (`μ: M ⊗_R *M → T`
//! splits), the Frobenius property (`*M ≅ M*`), and the dual-basis and
//! natural-transformation criteria that characterise separability and
//! Frobenius-ness of the functors `M ⊗_R −` and `Hom(_T M, −)`.

use std::sync::OnceLock;

use serde_json::{json, Value};

use super::invertible::{find_invertible, InvSearch};
use super::witness::mat_json;
use super::{all_elements, all_of, checked_pow, Affine, CertificateKind, Config, Decision, Verdict};
use crate::field::{Field, Scalar};
use crate::linalg::{unit_vec, vec_add, vec_sub, Mat, Subspace, Vector};
use crate::modlin::{
    balanced_relations, casimir_subspace, dual_left, dual_right, end_left, end_right, hom_space, is_hom,
    left_dual_basis, right_dual_basis, tensor_over, Bimodule, Dual, DualBasis, Side, Tensor,
};

/// An element of `M ⊗_k N` (index `a * dim N + b`) representing a class in
/// the balanced tensor product.
#[derive(Debug, Clone)]
pub struct TensorElement {
    pub coords: Vector,
    pub dims: (usize, usize),
}

impl TensorElement {
    pub fn to_json(&self, f: &Field) -> Value {
        let n = self.dims.1;
        let terms: Vec<Value> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| json!([i / n, i % n, f.to_json(c)]))
            .collect();
        json!({ "tensor_terms": terms })
    }
}

#[derive(Debug, Clone)]
pub enum CriterionWitness {
    Map(Mat),
    Element(TensorElement),
}

impl CriterionWitness {
    pub fn to_json(&self, f: &Field) -> Value {
        match self {
            CriterionWitness::Map(m) => json!({ "map": mat_json(f, m) }),
            CriterionWitness::Element(e) => e.to_json(f),
        }
    }
}

/// `e ∈ (M ⊗_R *M)^T` and `ν̄ ∈ Hom_{R-R}(End(_T M), R)` satisfying the two
/// Frobenius-pair identities.
#[derive(Debug, Clone)]
pub struct PairWitness {
    pub element: TensorElement,
    /// `ν̄` in the basis of `End(_T M)` used by the context
    pub nu: Mat,
}

impl PairWitness {
    pub fn to_json(&self, f: &Field) -> Value {
        json!({ "element": self.element.to_json(f), "nu": mat_json(f, &self.nu) })
    }
}

pub struct BimoduleContext {
    m: Bimodule,
    cfg: Config,
    star_m: OnceLock<Dual>,
    m_star: OnceLock<Dual>,
    w1: OnceLock<Tensor>,
    w1_tilde: OnceLock<Tensor>,
    end_t: OnceLock<Dual>,
    end_r: OnceLock<Dual>,
    basis_t: OnceLock<Option<DualBasis>>,
    basis_r: OnceLock<Option<DualBasis>>,
    pair: OnceLock<Decision<PairWitness>>,
}

impl BimoduleContext {
    pub fn new(m: Bimodule, cfg: Config) -> BimoduleContext {
        BimoduleContext {
            m,
            cfg,
            star_m: OnceLock::new(),
            m_star: OnceLock::new(),
            w1: OnceLock::new(),
            w1_tilde: OnceLock::new(),
            end_t: OnceLock::new(),
            end_r: OnceLock::new(),
            basis_t: OnceLock::new(),
            basis_r: OnceLock::new(),
            pair: OnceLock::new(),
        }
    }

    pub fn module(&self) -> &Bimodule {
        &self.m
    }

    fn f(&self) -> &Field {
        self.m.field()
    }

    /// `*M = Hom(_T M, _T T)`.
    pub fn left_dual(&self) -> &Dual {
        self.star_m.get_or_init(|| dual_left(&self.m))
    }

    /// `M* = Hom(M_R, R_R)`.
    pub fn right_dual(&self) -> &Dual {
        self.m_star.get_or_init(|| dual_right(&self.m))
    }

    /// `M ⊗_R *M`, a `T`-bimodule.
    fn w1(&self) -> &Tensor {
        self.w1.get_or_init(|| tensor_over(&self.m, &self.left_dual().module).expect("R acts on both"))
    }

    /// `M* ⊗_T M`, an `R`-bimodule.
    fn w1_tilde(&self) -> &Tensor {
        self.w1_tilde.get_or_init(|| tensor_over(&self.right_dual().module, &self.m).expect("T acts on both"))
    }

    fn end_over_t(&self) -> &Dual {
        self.end_t.get_or_init(|| end_left(&self.m))
    }

    fn end_over_r(&self) -> &Dual {
        self.end_r.get_or_init(|| end_right(&self.m))
    }

    /// Dual basis of `_T M`, if it is f.g. projective.
    pub fn left_basis(&self) -> &Option<DualBasis> {
        self.basis_t.get_or_init(|| left_dual_basis(&self.m).expect("regular T"))
    }

    /// Dual basis of `M_R`, if it is f.g. projective.
    pub fn right_basis(&self) -> &Option<DualBasis> {
        self.basis_r.get_or_init(|| right_dual_basis(&self.m).expect("regular R"))
    }

    pub fn fgp_left(&self) -> Decision<DualBasis> {
        opt_decision(self.left_basis().clone())
    }

    pub fn fgp_right(&self) -> Decision<DualBasis> {
        opt_decision(self.right_basis().clone())
    }

    /// `e ∈ (M ⊗_R *M)^T` with `μ(e) = 1_T`, `μ(m ⊗ g) = g(m)`.
    pub fn separable(&self) -> Decision<TensorElement> {
        let f = self.f().clone();
        let t = self.w1();
        let maps = &self.left_dual().maps.basis;
        let talg = self.m.left_alg();
        let mu = t.descend(&f, talg.dim(), |a, b| maps[b].col(a));
        casimir_with(&f, t, &mu, talg.unit())
    }

    /// `M` and `M*` separable, both sides f.g. projective.
    pub fn biseparable(&self) -> Verdict {
        let dual = BimoduleContext::new(self.right_dual().module.clone(), self.cfg);
        all_of(&[self.fgp_left().verdict, self.fgp_right().verdict, self.separable().verdict, dual.separable().verdict])
    }

    /// Both sides f.g. projective and `*M ≅ M*` as `(R,T)`-bimodules; the
    /// witness is the isomorphism.
    pub fn frobenius(&self) -> Decision<Mat> {
        if self.left_basis().is_none() || self.right_basis().is_none() {
            return Decision::no_because(CertificateKind::LinearInfeasible, "not finitely generated projective on both sides");
        }
        let (sm, ms) = (&self.left_dual().module, &self.right_dual().module);
        let hs = hom_space(sm, ms, Side::Both).expect("(R,T)-bimodules");
        match find_invertible(self.f(), &hs.basis, sm.dim(), ms.dim(), self.cfg.budget) {
            InvSearch::Found { map, .. } => Decision::yes(map),
            InvSearch::NoneExists => Decision::no(CertificateKind::NoInvertibleElement),
            InvSearch::Unknown { budget } => Decision::unknown(budget),
        }
    }

    // -- dual-basis and natural-transformation criteria ---------------------

    /// With `M_R` f.g.p. and dual basis `(p_k, h_k)`: some `φ ∈
    /// Hom_{R-T}(M*, *M)` has `Σ_k φ(h_k)(p_k) = 1_T`.
    pub fn sep_by_dual_basis(&self) -> Option<Decision<CriterionWitness>> {
        let db = self.right_basis().as_ref()?;
        let f = self.f();
        let (sm, ms) = (self.left_dual(), self.right_dual());
        let hs = hom_space(&ms.module, &sm.module, Side::Both).expect("(R,T)-bimodules");
        let hk: Vec<Vector> = db.fs.iter().map(|h| ms.coords_of(h).expect("dual basis maps lie in M*")).collect();
        let values: Vec<Vector> = hs
            .basis
            .iter()
            .map(|phi| {
                db.xs.iter().zip(&hk).fold(self.m.left_alg().zero_vec(), |acc, (p, h)| {
                    vec_add(f, &acc, &sm.map_of(&phi.mul_vec(f, h)).mul_vec(f, p))
                })
            })
            .collect();
        Some(map_criterion(f, &hs.basis, &values, self.m.left_alg().unit()))
    }

    /// With `M_R` f.g.p.: some `ν̄ ∈ Hom_{T-T}(End(M_R), T)` has `ν̄(I) = 1_T`.
    pub fn sep_by_endomorphisms(&self) -> Option<Decision<CriterionWitness>> {
        self.right_basis().as_ref()?;
        let end = self.end_over_r();
        let target = Bimodule::regular(self.m.left_alg().clone());
        Some(self.unit_criterion(end, &target))
    }

    /// With `_T M` f.g.p.: some `ν̄ ∈ Hom_{R-R}(End(_T M), R)` has `ν̄(I) = 1_R`.
    pub fn tensor_sep_by_endomorphisms(&self) -> Option<Decision<CriterionWitness>> {
        self.left_basis().as_ref()?;
        let end = self.end_over_t();
        let target = Bimodule::regular(self.m.right_alg().clone());
        Some(self.unit_criterion(end, &target))
    }

    fn unit_criterion(&self, end: &Dual, target: &Bimodule) -> Decision<CriterionWitness> {
        let f = self.f();
        let hs = hom_space(&end.module, target, Side::Both).expect("same algebras");
        let id = end.coords_of(&Mat::identity(f, self.m.dim())).expect("identity is an endomorphism");
        let values: Vec<Vector> = hs.basis.iter().map(|nu| nu.mul_vec(f, &id)).collect();
        map_criterion(f, &hs.basis, &values, target.left_alg().unit())
    }

    /// With `_T M` f.g.p. and dual basis `(n_j, g_j)`: some `φ̄ ∈
    /// Hom_{R-T}(*M, M*)` has `Σ_j φ̄(g_j)(n_j) = 1_R`.
    pub fn tensor_sep_by_dual_basis(&self) -> Option<Decision<CriterionWitness>> {
        let db = self.left_basis().as_ref()?;
        let f = self.f();
        let (sm, ms) = (self.left_dual(), self.right_dual());
        let hs = hom_space(&sm.module, &ms.module, Side::Both).expect("(R,T)-bimodules");
        let gj: Vec<Vector> = db.fs.iter().map(|g| sm.coords_of(g).expect("dual basis maps lie in *M")).collect();
        let values: Vec<Vector> = hs
            .basis
            .iter()
            .map(|phi| {
                db.xs.iter().zip(&gj).fold(self.m.right_alg().zero_vec(), |acc, (n, g)| {
                    vec_add(f, &acc, &ms.map_of(&phi.mul_vec(f, g)).mul_vec(f, n))
                })
            })
            .collect();
        Some(map_criterion(f, &hs.basis, &values, self.m.right_alg().unit()))
    }

    /// `e ∈ (M* ⊗_T M)^R` with `Σ k_i(m_i) = 1_R` (separability of
    /// `Hom(M_R, −)`). No precondition.
    pub fn hom_sep_element(&self) -> Decision<CriterionWitness> {
        let f = self.f().clone();
        let t = self.w1_tilde();
        let maps = &self.right_dual().maps.basis;
        let ralg = self.m.right_alg();
        let mu = t.descend(&f, ralg.dim(), |b, a| maps[b].col(a));
        casimir_with(&f, t, &mu, ralg.unit()).map(CriterionWitness::Element)
    }

    // -- Frobenius pair data ------------------------------------------------

    /// Linear pieces of the pair identities: for each basis `ν̄_k` of
    /// `Hom_{R-R}(End(_T M), R)`, the map `e ↦ (Σ e_i ν̄_k(f_i·x), Σ ν̄_k(g·e_i) f_i)`
    /// on quotient coordinates of `M ⊗_R *M`, stacked over basis `x`, `g`.
    fn pair_system(&self) -> (Vec<Mat>, Vec<Mat>, Vector) {
        let f = self.f().clone();
        let m = &self.m;
        let dm = m.dim();
        let sm = self.left_dual();
        let ds = sm.module.dim();
        let end = self.end_over_t();
        let v1 = hom_space(&end.module, &Bimodule::regular(m.right_alg().clone()), Side::Both).expect("same algebras");
        // γ(g, x) = (y ↦ g(y)·x), coordinates in End(_T M)
        let t_ops = m.left_ops();
        let gamma = |b: usize, x: &Vector| -> Vector {
            let cols: Vec<Vector> = t_ops.iter().map(|l| l.mul_vec(&f, x)).collect();
            let lx = Mat::from_cols(dm, &cols);
            end.coords_of(&lx.mul(&f, &sm.maps.basis[b])).expect("γ(g, x) is left T-linear")
        };
        let p: Vec<Vec<Vector>> = (0..ds).map(|b| (0..dm).map(|x| gamma(b, &unit_vec(&f, dm, x))).collect()).collect();
        let t = self.w1();
        let w = casimir_subspace(&t.module).expect("T-bimodule");
        let wbasis = w.basis().to_vec();
        let len = dm * dm + ds * ds;
        let pieces: Vec<Mat> = v1
            .basis
            .iter()
            .map(|nu| {
                let d = t.descend(&f, len, |a, b| {
                    let mut v = Vec::with_capacity(len);
                    for px in &p[b] {
                        v.extend(m.right_action(&nu.mul_vec(&f, px)).col(a));
                    }
                    for pj in &p {
                        v.extend(sm.module.left_action(&nu.mul_vec(&f, &pj[a])).col(b));
                    }
                    v
                });
                let cols: Vec<Vector> = wbasis.iter().map(|wb| d.mul_vec(&f, wb)).collect();
                if cols.is_empty() {
                    Mat::zeros(&f, len, 0)
                } else {
                    Mat::from_cols(len, &cols)
                }
            })
            .collect();
        let mut target = Mat::identity(&f, dm).to_vector();
        target.extend(Mat::identity(&f, ds).to_vector());
        (v1.basis, pieces, target)
    }

    /// Requires `_T M` f.g.p. (`None` otherwise). Enumerates `ν̄` and solves
    /// for `e` linearly.
    pub fn frobenius_pair_data(&self) -> Option<Decision<PairWitness>> {
        self.left_basis().as_ref()?;
        Some(self.pair.get_or_init(|| self.search_pair()).clone())
    }

    fn search_pair(&self) -> Decision<PairWitness> {
        let f = self.f().clone();
        let (nus, pieces, target) = self.pair_system();
        let t = self.w1();
        let w = casimir_subspace(&t.module).expect("T-bimodule");
        let d = nus.len();
        let dim_star = self.left_dual().module.dim();
        let try_coeffs = |c: &[Scalar]| -> Option<PairWitness> {
            let sys = if pieces.is_empty() { Mat::zeros(&f, target.len(), w.dim()) } else { Mat::combination(&f, c, &pieces) };
            let rows: Vec<Vector> = (0..sys.rows()).map(|i| sys.row(i).to_vec()).collect();
            let sol = Affine::solve(&f, w.dim(), &rows, &target)?;
            let q = crate::linalg::combine_vecs(&f, &sol.point, w.basis(), t.dim());
            let nu = if nus.is_empty() {
                Mat::zeros(&f, self.m.right_alg().dim(), self.end_over_t().module.dim())
            } else {
                Mat::combination(&f, c, &nus)
            };
            Some(PairWitness { element: TensorElement { coords: t.section(&f, &q), dims: t.dims() }, nu })
        };
        let full = Affine { point: vec![f.zero(); d], directions: (0..d).map(|i| unit_vec(&f, d, i)).collect() };
        let budget = self.cfg.budget;
        let run = |pts: &[Scalar], count: u64| (0..count).find_map(|i| try_coeffs(&full.nth(&f, pts, i)));
        let done = |w: Option<PairWitness>| match w {
            Some(w) => Decision::yes(w),
            None => Decision::no(CertificateKind::NoInvertibleElement),
        };
        if let Some(pts) = all_elements(&f) {
            if let Some(total) = checked_pow(pts.len() as u64, d).filter(|&t| t <= budget) {
                return done(run(&pts, total));
            }
        }
        // a working ν̄ exists iff its image in Hom(*M, M*) is invertible, a
        // determinant condition of degree ≤ dim *M in the coordinates of ν̄
        if let (Some(pts), Some(total)) = (
            f.distinct_elements(dim_star + 1),
            checked_pow(dim_star as u64 + 1, d).filter(|&t| t <= budget),
        ) {
            return done(run(&pts, total));
        }
        let pts = all_elements(&f).or_else(|| f.distinct_elements(dim_star + 1)).expect("some scalars");
        match run(&pts, budget) {
            Some(w) => Decision::yes(w),
            None => Decision::unknown(budget),
        }
    }

    /// For a Frobenius `M` with pair data `(e, ν̄)`: some `ᾱ ∈ End_{T-R}(M)`
    /// has `Σ_i f_i(ᾱ(m_i)) = 1_T`. `None` when `M` is not Frobenius.
    pub fn sep_given_frobenius_data(&self) -> Option<Decision<CriterionWitness>> {
        let data = self.frobenius_pair_data()?;
        match data.verdict {
            Verdict::False => return None,
            Verdict::Unknown => return Some(Decision::unknown(self.cfg.budget)),
            Verdict::True => {}
        }
        let e = data.witness.expect("true verdicts carry witnesses").element;
        let f = self.f();
        let maps = &self.left_dual().maps.basis;
        let hs = hom_space(&self.m, &self.m, Side::Both).expect("same algebras");
        let ds = maps.len();
        let values: Vec<Vector> = hs
            .basis
            .iter()
            .map(|alpha| {
                let mut acc = self.m.left_alg().zero_vec();
                for (i, c) in e.coords.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let (a, b) = (i / ds, i % ds);
                    let v = maps[b].mul_vec(f, &alpha.col(a));
                    acc = vec_add(f, &acc, &v.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
                }
                acc
            })
            .collect();
        Some(map_criterion(f, &hs.basis, &values, self.m.left_alg().unit()))
    }

    // -- independent checks -------------------------------------------------

    /// Re-checks a separability element from scratch.
    pub fn verify_separable(&self, e: &TensorElement) -> bool {
        let sm = &self.left_dual();
        let maps = &sm.maps.basis;
        verify_casimir_element(&self.m, &sm.module, &e.coords, |a, b| maps[b].col(a), self.m.left_alg().unit())
    }

    pub fn verify_frobenius_iso(&self, phi: &Mat) -> bool {
        let (sm, ms) = (&self.left_dual().module, &self.right_dual().module);
        is_hom(sm, ms, Side::Both, phi) && crate::linalg::inverse(self.f(), phi).is_some()
    }

    /// Re-checks both pair identities directly on `M` and `*M`.
    pub fn verify_pair(&self, w: &PairWitness) -> bool {
        let f = self.f();
        let m = &self.m;
        let (dm, sm) = (m.dim(), self.left_dual());
        let ds = sm.module.dim();
        let end = self.end_over_t();
        let ralg = Bimodule::regular(m.right_alg().clone());
        if !is_hom(&end.module, &ralg, Side::Both, &w.nu) {
            return false;
        }
        if !verify_casimir_element(m, &sm.module, &w.element.coords, |_, _| Vector::new(), &[]) {
            return false;
        }
        let nu_of = |g: &Mat, x: &Vector| -> Vector {
            // ν̄(g·x) with (g·x)(y) = g(y)·x
            let cols: Vec<Vector> = (0..dm).map(|y| m.act_left(&g.col(y), x)).collect();
            let gx = Mat::from_cols(dm, &cols);
            w.nu.mul_vec(f, &end.coords_of(&gx).expect("left T-linear"))
        };
        let terms: Vec<(usize, usize, &Scalar)> =
            w.element.coords.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i / ds, i % ds, c)).collect();
        let first = (0..dm).all(|x| {
            let ex = unit_vec(f, dm, x);
            let sum = terms.iter().fold(vec![f.zero(); dm], |acc, &(a, b, c)| {
                let r = nu_of(&sm.maps.basis[b], &ex);
                let v = m.act_right(&unit_vec(f, dm, a), &r);
                vec_add(f, &acc, &v.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>())
            });
            sum == ex
        });
        let second = (0..ds).all(|j| {
            let uj = unit_vec(f, ds, j);
            let sum = terms.iter().fold(vec![f.zero(); ds], |acc, &(a, b, c)| {
                let r = nu_of(&sm.maps.basis[j], &unit_vec(f, dm, a));
                let v = sm.module.act_left(&r, &unit_vec(f, ds, b));
                vec_add(f, &acc, &v.iter().map(|x| f.mul(x, c)).collect::<Vec<_>>())
            });
            sum == uj
        });
        first && second
    }
}

fn opt_decision<W>(w: Option<W>) -> Decision<W> {
    match w {
        Some(w) => Decision::yes(w),
        None => Decision::no(CertificateKind::LinearInfeasible),
    }
}

/// Finds `Σ c_k basis_k` whose value `Σ c_k values_k` equals `target`.
fn map_criterion(f: &Field, basis: &[Mat], values: &[Vector], target: &[Scalar]) -> Decision<CriterionWitness> {
    let n = target.len();
    let rows: Vec<Vector> = (0..n).map(|i| values.iter().map(|v| v[i].clone()).collect()).collect();
    match Affine::solve(f, basis.len(), &rows, target) {
        Some(sol) => {
            let map = if basis.is_empty() { Mat::zeros(f, 0, 0) } else { Mat::combination(f, &sol.point, basis) };
            Decision::yes(CriterionWitness::Map(map))
        }
        None => Decision::no(CertificateKind::LinearInfeasible),
    }
}

/// A Casimir element of the tensor module whose multiplication `mu`
/// (on quotient coordinates) equals `target`.
fn casimir_with(f: &Field, t: &Tensor, mu: &Mat, target: &[Scalar]) -> Decision<TensorElement> {
    let w = casimir_subspace(&t.module).expect("same algebra on both sides");
    let cols: Vec<Vector> = w.basis().iter().map(|b| mu.mul_vec(f, b)).collect();
    let rows: Vec<Vector> = (0..target.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    match Affine::solve(f, w.dim(), &rows, target) {
        Some(sol) => {
            let q = crate::linalg::combine_vecs(f, &sol.point, w.basis(), t.dim());
            Decision::yes(TensorElement { coords: t.section(f, &q), dims: t.dims() })
        }
        None => Decision::no(CertificateKind::LinearInfeasible),
    }
}

/// `e ∈ M ⊗_k N` commutes with the outer algebra modulo the balanced
/// relations and, if `target` is non-empty, `Σ e_ab mu(a, b) = target`.
pub fn verify_casimir_element(
    m: &Bimodule,
    n: &Bimodule,
    e: &[Scalar],
    mu: impl Fn(usize, usize) -> Vector,
    target: &[Scalar],
) -> bool {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    if e.len() != dm * dn {
        return false;
    }
    if !target.is_empty() {
        let mut acc = vec![f.zero(); target.len()];
        for (i, c) in e.iter().enumerate() {
            if !f.is_zero(c) {
                acc = vec_add(f, &acc, &mu(i / dn, i % dn).iter().map(|x| f.mul(x, c)).collect::<Vec<_>>());
            }
        }
        if acc != target {
            return false;
        }
    }
    let rels: Subspace = balanced_relations(m, n);
    let id_m = Mat::identity(f, dm);
    let id_n = Mat::identity(f, dn);
    m.left_ops().iter().zip(n.right_ops()).all(|(l, r)| {
        let left = l.kron(f, &id_n).mul_vec(f, e);
        let right = id_m.kron(f, r).mul_vec(f, e);
        rels.contains(f, &vec_sub(f, &left, &right))
    })
}

/// Everything about one bimodule as JSON-friendly verdicts.
pub fn criteria_summary(ctx: &BimoduleContext) -> Value {
    let v = |d: Option<Decision<CriterionWitness>>| match d {
        Some(d) => json!(d.verdict.as_str()),
        None => json!("precondition_failed"),
    };
    json!({
        "separable": ctx.separable().verdict.as_str(),
        "frobenius": ctx.frobenius().verdict.as_str(),
        "tensor_sep_by_endomorphisms": v(ctx.tensor_sep_by_endomorphisms()),
        "tensor_sep_by_dual_basis": v(ctx.tensor_sep_by_dual_basis()),
        "sep_by_dual_basis": v(ctx.sep_by_dual_basis()),
        "sep_by_endomorphisms": v(ctx.sep_by_endomorphisms()),
        "hom_sep_element": ctx.hom_sep_element().verdict.as_str(),
        "sep_given_frobenius_data": v(ctx.sep_given_frobenius_data()),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{base_field_algebra, diagonal, group_algebra, matrix_algebra, upper_triangular};
    use crate::group::CayleyTable;
    use crate::modlin::{group_extension, natural_bimodule, Extension, Pattern};

    fn cfg() -> Config {
        Config { budget: 1_000_000 }
    }

    /// `k^n` as an `(M_n(k), k)`-bimodule.
    fn morita(f: &Field, n: usize) -> Bimodule {
        let t = Arc::new(matrix_algebra(f, n));
        let k = Arc::new(base_field_algebra(f));
        let left = (0..n * n).map(|i| t.left_mul_matrix(&t.basis_vec(i))).map(|l| column_action(f, &l, n)).collect();
        Bimodule::new(t, k, n, left, vec![Mat::identity(f, n)]).unwrap()
    }

    /// `L_{e_ij}` on `M_n` restricted to the first column.
    fn column_action(f: &Field, l: &Mat, n: usize) -> Mat {
        let mut out = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, l.get(i * n, j * n).clone());
            }
        }
        out
    }

    fn check_all(m: Bimodule) -> BimoduleContext {
        let c = BimoduleContext::new(m, cfg());
        if let Some(e) = c.separable().witness {
            assert!(c.verify_separable(&e));
        }
        if let Some(phi) = c.frobenius().witness {
            assert!(c.verify_frobenius_iso(&phi));
        }
        if let Some(Decision { witness: Some(w), .. }) = c.frobenius_pair_data() {
            assert!(c.verify_pair(&w));
        }
        c
    }

    #[test]
    fn morita_bimodule_everything_true() {
        for f in [Field::prime(2).unwrap(), Field::Rationals] {
            let c = check_all(morita(&f, 2));
            assert!(c.separable().is_true());
            assert!(c.frobenius().is_true());
            assert_eq!(c.biseparable(), Verdict::True);
            for d in [c.tensor_sep_by_endomorphisms(), c.tensor_sep_by_dual_basis(), c.sep_by_dual_basis(), c.sep_by_endomorphisms()] {
                assert!(d.unwrap().is_true());
            }
            assert!(c.hom_sep_element().is_true());
            assert!(c.frobenius_pair_data().unwrap().is_true());
            assert!(c.sep_given_frobenius_data().unwrap().is_true());
        }
    }

    fn ext_cases() -> Vec<Extension> {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let tri = Extension::new(
            Arc::new(diagonal(&f2, 2)),
            Arc::new(upper_triangular(&f2, 2)),
            Mat::from_ints(&f2, 3, 2, &[1, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        vec![
            Extension::over_base_field(Arc::new(group_algebra(&f2, &CayleyTable::cyclic(2)))),
            Extension::over_base_field(Arc::new(group_algebra(&f3, &CayleyTable::cyclic(2)))),
            Extension::over_base_field(Arc::new(diagonal(&f2, 2))),
            tri,
            group_extension(&f2, &CayleyTable::symmetric3(), &[0, 1, 2]).unwrap(),
            crate::modlin::tests::matrix_over_triangular(&f2),
        ]
    }

    #[test]
    fn natural_bimodules_match_extension_deciders() {
        use crate::deciders::ExtContext;
        for ext in ext_cases() {
            let e = ExtContext::new(ext.clone(), cfg());
            let rrs = check_all(natural_bimodule(&ext, Pattern::RRS));
            let srr = check_all(natural_bimodule(&ext, Pattern::SRR));
            assert_eq!(rrs.separable().verdict, e.separable().verdict);
            assert_eq!(srr.separable().verdict, e.split().verdict);
            assert_eq!(rrs.frobenius().verdict, e.frobenius().verdict);
            for c in [&rrs, &srr] {
                let sep = c.separable().verdict;
                if let Some(d) = c.sep_by_dual_basis() {
                    assert_eq!(d.verdict, sep);
                }
                if let Some(d) = c.sep_by_endomorphisms() {
                    assert_eq!(d.verdict, sep);
                }
                if let (Some(a), Some(b)) = (c.tensor_sep_by_endomorphisms(), c.tensor_sep_by_dual_basis()) {
                    assert_eq!(a.verdict, b.verdict);
                    assert_eq!(a.verdict, c.hom_sep_element().verdict);
                }
                if let Some(d) = c.frobenius_pair_data() {
                    assert_eq!(d.verdict, c.frobenius().verdict);
                }
                if let Some(d) = c.sep_given_frobenius_data() {
                    assert_eq!(d.verdict, sep);
                }
            }
        }
    }
}
