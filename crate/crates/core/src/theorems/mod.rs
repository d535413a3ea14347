//! Checkers for the Cohen-Macaulay criteria and multiplicity bounds on the
//! associated graded module, with seeded instance corpora.

mod corpus;

pub use corpus::{generate_corpus, run_corpus, CorpusKind, CorpusParams, CorpusSummary};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::hilbert::hilbert_series;
use crate::koszul::{koszul_homology, local_depth_via_koszul};
use crate::local::{associated_graded, cm_certificate, AssociatedGraded, InstanceFile, LocalInstance};
use crate::resolution::{
    betti_table, estimate_complexity, finite_stage_resolution, minimal_free_resolution, BettiTable, Presentation,
};
use crate::ring::{Field, Polynomial, Ring};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "VACUOUS")]
    Vacuous,
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable,
    #[serde(rename = "PASS-ON-WINDOW")]
    PassOnWindow,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
            Verdict::NotApplicable => "NOT-APPLICABLE",
            Verdict::PassOnWindow => "PASS-ON-WINDOW",
        }
    }

    /// Process exit status for the command-line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Vacuous | Verdict::PassOnWindow => 0,
            Verdict::NotApplicable => 2,
            Verdict::Fail => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named hypothesis with the computed evidence for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: String,
}

impl Hypothesis {
    pub fn new(name: &str, holds: bool, witness: String) -> Self {
        Hypothesis {
            name: name.to_string(),
            holds,
            witness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm-3.3")]
    AlphaDrop,
    #[serde(rename = "cor-3.4")]
    QuasiPure,
    #[serde(rename = "lem-4.2")]
    FinitePdBounds,
    #[serde(rename = "thm-4.3")]
    FinitePdEquality,
    #[serde(rename = "thm-5.7")]
    SciBounds,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::AlphaDrop,
        TheoremId::QuasiPure,
        TheoremId::FinitePdBounds,
        TheoremId::FinitePdEquality,
        TheoremId::SciBounds,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::AlphaDrop => "thm-3.3",
            TheoremId::QuasiPure => "cor-3.4",
            TheoremId::FinitePdBounds => "lem-4.2",
            TheoremId::FinitePdEquality => "thm-4.3",
            TheoremId::SciBounds => "thm-5.7",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown theorem id {s:?} (expected thm-3.3, cor-3.4, lem-4.2, thm-4.3 or thm-5.7)")))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs shared by the checkers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub seed: u64,
    /// Steps of the finite-stage resolution used to estimate complexity.
    pub stages: usize,
    /// Overrides any complexity declared by the instance.
    pub declared_cx: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            stages: 5,
            declared_cx: None,
        }
    }
}

/// Structured verdict of one checker on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub seed: u64,
    pub instance: InstanceFile,
    pub hypotheses: Vec<Hypothesis>,
    pub invariants: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn hypothesis(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|h| h.name == name).map(|h| h.holds)
    }
}

struct Report {
    theorem: TheoremId,
    hypotheses: Vec<Hypothesis>,
    invariants: BTreeMap<String, Value>,
    notes: Vec<String>,
}

impl Report {
    fn new(theorem: TheoremId) -> Self {
        Report {
            theorem,
            hypotheses: Vec::new(),
            invariants: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn hyp(&mut self, name: &str, holds: bool, witness: String) -> bool {
        self.hypotheses.push(Hypothesis::new(name, holds, witness));
        holds
    }

    fn set(&mut self, key: &str, v: Value) {
        self.invariants.insert(key.to_string(), v);
    }

    fn finish<F: Field>(self, inst: &LocalInstance<F>, opts: &CheckOptions, verdict: Verdict) -> CheckReport {
        CheckReport {
            theorem: self.theorem,
            seed: opts.seed,
            instance: inst.to_file(),
            hypotheses: self.hypotheses,
            invariants: self.invariants,
            notes: self.notes,
            verdict,
        }
    }
}

/// depth and CM flag of G(M) = R/in*(I) from its minimal resolution.
fn graded_cm(g: &AssociatedGraded<impl Field>, nvars: usize) -> (i64, bool) {
    let depth = nvars as i64 - g.betti.pd() as i64;
    (depth, depth == g.hilbert.dim)
}

fn betti_json(bt: &BettiTable) -> Value {
    json!({
        "table": bt.render(),
        "alpha": bt.alpha(),
        "gamma": bt.gamma(),
        "pd": bt.pd(),
        "reg": bt.regularity(),
    })
}

fn graded_invariants(r: &mut Report, g: &AssociatedGraded<impl Field>, nvars: usize) {
    let (depth_g, _) = graded_cm(g, nvars);
    r.set("betti", betti_json(&g.betti));
    r.set("h_poly", json!(g.hilbert.h_poly));
    r.set("e0", json!(g.hilbert.e0()));
    r.set("e1", json!(g.hilbert.e1()));
    r.set("mu", json!(g.hilbert.mu));
    r.set("dim", json!(g.hilbert.dim));
    r.set("depth_G", json!(depth_g));
}

/// The M-CM hypothesis: depth M = dim G(M). Dimension zero is CM outright;
/// otherwise a multiplicity certificate is tried first, and Koszul homology
/// on the variables decides when it does not apply. A declared flag replaces
/// the computed one and is echoed.
fn m_cm_hypothesis<F: Field>(
    r: &mut Report,
    inst: &LocalInstance<F>,
    g: &AssociatedGraded<F>,
    seed: u64,
) -> Result<bool, Error> {
    let dim = g.hilbert.dim;
    let (depth, how) = if dim == 0 {
        (0, "finite length".to_string())
    } else if let Some((forms, len)) = cm_certificate(inst, &g.hilbert, seed)? {
        let forms: Vec<String> = forms.iter().map(|f| inst.ring.format(f)).collect();
        (dim, format!("length of M/(ℓ)M = e0 = {len} for ℓ = {}", forms.join(", ")))
    } else {
        (local_depth_via_koszul(inst)? as i64, "Koszul homology".to_string())
    };
    r.set("depth", json!(depth));
    let computed = depth == dim;
    match inst.declared.cm {
        Some(d) => {
            if d != computed {
                r.notes.push(format!("declared cm = {d} disagrees with computed depth {depth}, dim {dim}"));
            }
            Ok(r.hyp("M Cohen-Macaulay", d, format!("declared {d}; computed depth {depth}, dim {dim} ({how})")))
        }
        None => Ok(r.hyp("M Cohen-Macaulay", computed, format!("depth {depth}, dim {dim} ({how})"))),
    }
}

/// If G(M) is not Cohen-Macaulay then α_p < α_{p−1}.
pub fn check_alpha_drop<F: Field>(inst: &LocalInstance<F>, opts: &CheckOptions) -> Result<CheckReport, Error> {
    let mut r = Report::new(TheoremId::AlphaDrop);
    let g = associated_graded(inst)?;
    let n = inst.nvars();
    graded_invariants(&mut r, &g, n);
    let m_cm = m_cm_hypothesis(&mut r, inst, &g, opts.seed)?;
    let (depth_g, g_cm) = graded_cm(&g, n);
    r.hyp("G(M) not Cohen-Macaulay", !g_cm, format!("depth {depth_g}, dim {}", g.hilbert.dim));
    let alpha = g.betti.alpha();
    let p = g.betti.pd();
    let drop = p >= 1 && alpha[p] < alpha[p - 1];
    if p >= 1 {
        r.notes.push(format!("alpha_{p} = {}, alpha_{} = {}", alpha[p], p - 1, alpha[p - 1]));
    }
    let verdict = if !m_cm {
        Verdict::NotApplicable
    } else if g_cm {
        Verdict::Vacuous
    } else if drop {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(r.finish(inst, opts, verdict))
}

/// If G(M) has a quasi-pure resolution then G(M) is Cohen-Macaulay.
pub fn check_quasipure_cm<F: Field>(inst: &LocalInstance<F>, opts: &CheckOptions) -> Result<CheckReport, Error> {
    let mut r = Report::new(TheoremId::QuasiPure);
    let g = associated_graded(inst)?;
    let n = inst.nvars();
    graded_invariants(&mut r, &g, n);
    let m_cm = m_cm_hypothesis(&mut r, inst, &g, opts.seed)?;
    let qp = g.betti.is_quasi_pure();
    r.hyp(
        "G(M) quasi-pure",
        qp,
        format!("gamma {:?}, alpha {:?}", g.betti.gamma(), g.betti.alpha()),
    );
    r.set("pure", json!(g.betti.is_pure()));
    let (_, g_cm) = graded_cm(&g, n);
    r.set("G_cm", json!(g_cm));
    let verdict = if !m_cm {
        Verdict::NotApplicable
    } else if !qp {
        Verdict::Vacuous
    } else if g_cm {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(r.finish(inst, opts, verdict))
}

/// Whether homogeneous forms are a regular sequence in the polynomial
/// ring: H_1 of their Koszul complex vanishes in every degree up to a bound
/// that covers the generators of the first syzygies.
pub fn is_regular_sequence<F: Field>(ring: &Ring<F>, forms: &[Polynomial<F>]) -> Result<(bool, String), Error> {
    if forms.is_empty() {
        return Ok((true, "empty sequence".into()));
    }
    if let Some(f) = forms.iter().find(|f| f.is_zero() || !f.is_homogeneous()) {
        return Ok((false, format!("{} is not a nonzero form", ring.format(f))));
    }
    let res = minimal_free_resolution(&Presentation::cyclic(ring, forms))?;
    let bt = betti_table(&res)?;
    let sum: i64 = forms.iter().map(|f| f.total_degree().unwrap() as i64).sum();
    let bound = bt.alpha().get(2).copied().unwrap_or(0).max(sum);
    let free = Presentation::cyclic(ring, &[]);
    let h = koszul_homology(&free, forms, (0, bound))?;
    let h1 = h.total(1);
    let dim = hilbert_series(&bt, ring.nvars())?.dim;
    let expected = ring.nvars() as i64 - forms.len() as i64;
    debug_assert_eq!(h1 == 0, dim == expected, "Koszul and dimension tests disagree");
    Ok((h1 == 0, format!("H_1 total {h1} in degrees 0..{bound}; dim R/(f*) = {dim}")))
}

fn initial_forms<F: Field>(inst: &LocalInstance<F>) -> Result<Vec<Polynomial<F>>, Error> {
    inst.ambient.iter().map(|f| inst.ring.initial_form(f)).collect()
}

/// Hypotheses shared by the bounds checkers: f* regular, G(A) CM and
/// M CM. Returns whether they all hold, and G(A).
fn ambient_hypotheses<F: Field>(
    r: &mut Report,
    inst: &LocalInstance<F>,
    g: &AssociatedGraded<F>,
    seed: u64,
) -> Result<(bool, AssociatedGraded<F>), Error> {
    let ring = &inst.ring;
    let n = ring.nvars();
    let forms = initial_forms(inst)?;
    r.set("initial_forms", json!(forms.iter().map(|f| ring.format(f)).collect::<Vec<_>>()));
    let mut ok = r.hyp("ambient sequence given", !inst.ambient.is_empty(), format!("{} elements", inst.ambient.len()));
    let (reg_seq, w) = is_regular_sequence(ring, &forms)?;
    ok &= r.hyp("initial forms regular in G(Q)", reg_seq, w);
    let ga = associated_graded(&inst.ambient_instance())?;
    let (depth_ga, ga_cm) = graded_cm(&ga, n);
    ok &= r.hyp("G(A) Cohen-Macaulay", ga_cm, format!("depth {depth_ga}, dim {}", ga.hilbert.dim));
    r.set("G(A)", betti_json(&ga.betti));
    ok &= m_cm_hypothesis(r, inst, g, seed)?;
    Ok((ok, ga))
}

/// M = A/(g_1..g_k) with g an A-regular sequence: as A is CM, this holds
/// exactly when M is CM and cutting by g drops the dimension by k.
fn regular_cut_hypothesis<F: Field>(
    r: &mut Report,
    inst: &LocalInstance<F>,
    ga: &AssociatedGraded<F>,
    g: &AssociatedGraded<F>,
    m_cm: bool,
) -> bool {
    let cut = ga.hilbert.dim - g.hilbert.dim;
    let k = inst.ideal.iter().filter(|f| !f.is_zero()).count() as i64;
    r.hyp(
        "M = A modulo an A-regular sequence",
        m_cm && cut == k,
        format!("dim A {} - dim M {} = {cut}, {k} elements", ga.hilbert.dim, g.hilbert.dim),
    )
}

fn binom2(a: i64) -> i64 {
    a * (a + 1) / 2
}

/// e_0 ≥ μ + c and e_1 ≥ C(c+1, 2) with c = reg G(A) (lem-4.2); equality
/// e_1 = C(c+1, 2) forces G(M) Cohen-Macaulay (thm-4.3).
pub fn check_finite_pd_bounds<F: Field>(
    inst: &LocalInstance<F>,
    claim: TheoremId,
    opts: &CheckOptions,
) -> Result<CheckReport, Error> {
    assert!(matches!(claim, TheoremId::FinitePdBounds | TheoremId::FinitePdEquality));
    let mut r = Report::new(claim);
    let n = inst.nvars();
    let g = associated_graded(inst)?;
    graded_invariants(&mut r, &g, n);
    let (mut ok, ga) = ambient_hypotheses(&mut r, inst, &g, opts.seed)?;
    let m_cm = r.hypotheses.last().is_some_and(|h| h.holds);
    ok &= regular_cut_hypothesis(&mut r, inst, &ga, &g, m_cm);
    let c = ga.betti.regularity();
    r.set("c", json!(c));
    let (e0, e1, mu) = (g.hilbert.e0(), g.hilbert.e1(), g.hilbert.mu as i64);
    let b0 = e0 >= mu + c;
    let b1 = e1 >= binom2(c);
    r.set("e0_bound", json!({"lhs": e0, "rhs": mu + c, "holds": b0}));
    r.set("e1_bound", json!({"lhs": e1, "rhs": binom2(c), "holds": b1}));
    let equality = e1 == binom2(c);
    let (_, g_cm) = graded_cm(&g, n);
    r.set("e1_equality", json!(equality));
    r.set("G_cm", json!(g_cm));
    let verdict = if !ok {
        Verdict::NotApplicable
    } else {
        match claim {
            TheoremId::FinitePdBounds => {
                if b0 && b1 && (!equality || g_cm) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            _ => {
                if !equality {
                    Verdict::Vacuous
                } else if g_cm {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        }
    };
    Ok(r.finish(inst, opts, verdict))
}

/// Betti numbers of G(M) over G(A) for the first `stages` steps.
fn finite_stage_betti<F: Field>(inst: &LocalInstance<F>, g: &AssociatedGraded<F>, stages: usize) -> Result<Vec<usize>, Error> {
    let forms = initial_forms(inst)?;
    let pres = Presentation::cyclic(&inst.ring, &g.tangent_cone.polynomials());
    Ok(finite_stage_resolution(&forms, &pres, stages)?.totals())
}

/// For a strict complete intersection A of codimension c and order s and a
/// CM module M of complexity r < c: e_0 ≥ μ + α, e_1 ≥ C(α+1, 2) with
/// α = (c − r)(s − 1), and equality in e_1 forces G(M) CM.
pub fn check_sci_bounds<F: Field>(inst: &LocalInstance<F>, opts: &CheckOptions) -> Result<CheckReport, Error> {
    let mut r = Report::new(TheoremId::SciBounds);
    let n = inst.nvars();
    let g = associated_graded(inst)?;
    graded_invariants(&mut r, &g, n);
    let (mut ok, _) = ambient_hypotheses(&mut r, inst, &g, opts.seed)?;
    let orders: Vec<u32> = inst.ambient.iter().map(|f| f.ord().unwrap_or(0)).collect();
    let s = orders.first().copied().unwrap_or(0) as i64;
    ok &= r.hyp("all f_i of equal order", orders.windows(2).all(|w| w[0] == w[1]), format!("orders {orders:?}"));
    let c = inst.ambient.len() as i64;
    r.set("codim", json!(c));
    r.set("s", json!(s));

    let betti = finite_stage_betti(inst, &g, opts.stages)?;
    let estimate = estimate_complexity(&betti).ok();
    r.set("finite_stage_betti", json!(betti));
    r.set(
        "cx_estimate",
        json!(estimate.map(|e| json!({"cx": e.cx, "stable": e.stable, "label": "ESTIMATED"}))),
    );
    let declared = opts.declared_cx.or(inst.declared.cx);
    let cx = match (declared, estimate) {
        (Some(d), est) => {
            if let Some(e) = est.filter(|e| e.stable && e.cx != d) {
                r.notes.push(format!("declared cx {d} differs from estimate {}", e.cx));
            }
            r.set("cx", json!({"value": d, "label": "DECLARED"}));
            Some(d as i64)
        }
        (None, Some(e)) if e.stable => {
            r.set("cx", json!({"value": e.cx, "label": "ESTIMATED"}));
            Some(e.cx as i64)
        }
        _ => None,
    };
    ok &= r.hyp(
        "complexity known",
        cx.is_some(),
        match cx {
            Some(v) => format!("cx {v}"),
            None => "estimate unstable and nothing declared".into(),
        },
    );
    let cx = cx.unwrap_or(c);
    ok &= r.hyp("cx < codim", cx < c, format!("cx {cx}, codim {c}"));

    let alpha = (c - cx).max(0) * (s - 1).max(0);
    r.set("alpha", json!(alpha));
    let (e0, e1, mu) = (g.hilbert.e0(), g.hilbert.e1(), g.hilbert.mu as i64);
    let b0 = e0 >= mu + alpha;
    let b1 = e1 >= binom2(alpha);
    let equality = e1 == binom2(alpha);
    let (_, g_cm) = graded_cm(&g, n);
    r.set("e0_bound", json!({"lhs": e0, "rhs": mu + alpha, "holds": b0}));
    r.set("e1_bound", json!({"lhs": e1, "rhs": binom2(alpha), "holds": b1}));
    r.set("e1_equality", json!(equality));
    r.set("G_cm", json!(g_cm));
    let verdict = if !ok {
        Verdict::NotApplicable
    } else if b0 && b1 && (!equality || g_cm) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(r.finish(inst, opts, verdict))
}

/// Run one checker on an instance.
pub fn check<F: Field>(theorem: TheoremId, inst: &LocalInstance<F>, opts: &CheckOptions) -> Result<CheckReport, Error> {
    match theorem {
        TheoremId::AlphaDrop => check_alpha_drop(inst, opts),
        TheoremId::QuasiPure => check_quasipure_cm(inst, opts),
        TheoremId::FinitePdBounds | TheoremId::FinitePdEquality => check_finite_pd_bounds(inst, theorem, opts),
        TheoremId::SciBounds => check_sci_bounds(inst, opts),
    }
}

/// Run one checker on an instance file, over the field it names.
pub fn check_file(theorem: TheoremId, file: &InstanceFile, opts: &CheckOptions) -> Result<CheckReport, Error> {
    check_file_with(theorem, file, file.field_spec()?, opts)
}

pub fn check_file_with(
    theorem: TheoremId,
    file: &InstanceFile,
    spec: crate::ring::FieldSpec,
    opts: &CheckOptions,
) -> Result<CheckReport, Error> {
    crate::with_field!(spec, |field| {
        let inst = LocalInstance::from_file(file, field)?;
        check(theorem, &inst, opts)
    })
}

impl CheckReport {
    /// Whether the M-CM hypothesis held, when the checker used it.
    pub fn m_cm(&self) -> Option<bool> {
        self.hypothesis("M Cohen-Macaulay")
    }

    pub fn g_not_cm(&self) -> Option<bool> {
        self.hypothesis("G(M) not Cohen-Macaulay")
    }
}
