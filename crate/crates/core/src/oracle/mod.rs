//! Randomized and exhaustive verification of the closed-form reports.
//!
//! Verdicts are plain data: a failed check becomes a [`Violation`] carrying
//! the offending matrices, never a panic or an error.

mod conjecture;
mod metamorphic;
mod scan;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use conjecture::{
    common_solution_search, conjecture35_search, pair_criterion_agreement, ConjectureDims, ConjectureReport, PairComparison,
    SearchHit,
};
pub use metamorphic::metamorphic_suite;
pub use scan::{curated_suite, fault_injection, scalar_scan_points, FaultOutcome, FaultReport};

use crate::error::{Result, RiaError};
use crate::extremal::{
    constrained_extremal, feasible_family, solution_inertia_extremal, submatrix_extremal, ConstrainedProblem, ExtremalValues,
    FeasibleFamily, Objective, Sense, SubBlock, SubmatrixSelector,
};
use crate::lmi::{lmi_feasible, lmi_general_solution, xhat_properties, LmiProblem, Relation};
use crate::loewner::{loewner_extremal, LoewnerBound};
use crate::matrix::{QHerm, QMat};
use crate::sampling::{derive_seed, GridSampler, DEFAULT_GRID};
use crate::scalar::Backend;
use crate::spectral::{inr, Inertia};

/// Default number of sampled realizations per instance.
pub const DEFAULT_SAMPLES: usize = 500;

/// How the constraint is made feasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `A₂ = B₂HB₂* ∓ GG*` (plain `B₂HB₂*` for equations): `X = H` solves it.
    Forced,
    /// Draw `(A₂, B₂)` until the feasibility test passes.
    Rejection { max_attempts: usize },
}

/// Everything that determines a generated instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub m1: usize,
    pub m2: usize,
    pub n: usize,
    /// Column split used for submatrix checks; `0` means none.
    pub n1: usize,
    pub relation: Relation,
    pub backend: Backend,
    pub seed: u64,
    pub grid: i64,
    pub samples: usize,
    pub construction: Construction,
}

impl InstanceSpec {
    pub fn new(m1: usize, m2: usize, n: usize, relation: Relation, seed: u64) -> Self {
        InstanceSpec {
            m1,
            m2,
            n,
            n1: 0,
            relation,
            backend: Backend::Exact,
            seed,
            grid: DEFAULT_GRID,
            samples: DEFAULT_SAMPLES,
            construction: Construction::Forced,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.backend != Backend::Exact {
            return Err(RiaError::BackendMismatch("verdicts require the exact backend".into()));
        }
        if self.m1 == 0 || self.m2 == 0 || self.n == 0 {
            return Err(RiaError::DimensionMismatch("instance dimensions must be positive".into()));
        }
        if self.n1 > self.n {
            return Err(RiaError::DimensionMismatch(format!("split n1 = {} exceeds n = {}", self.n1, self.n)));
        }
        if self.relation.is_strict() {
            return Err(RiaError::UnsupportedRelation(format!("constraint relation {} is strict", self.relation)));
        }
        Ok(())
    }
}

/// A constrained instance whose constraint is feasible, drawn deterministically from `spec`.
pub fn generate_feasible_instance(spec: &InstanceSpec) -> Result<ConstrainedProblem> {
    spec.validate()?;
    let mut g = GridSampler::new(spec.seed).with_grid(spec.grid);
    let a1 = g.structured_herm(spec.m1);
    let b1 = g.structured(spec.m1, spec.n);
    let (a2, b2) = match spec.construction {
        Construction::Forced => forced_constraint(&mut g, spec.m2, spec.n, spec.relation),
        Construction::Rejection { max_attempts } => {
            let mut found = None;
            for _ in 0..max_attempts {
                let a2 = g.structured_herm(spec.m2);
                let b2 = g.structured(spec.m2, spec.n);
                if lmi_feasible(&LmiProblem::new(a2.clone(), b2.clone(), spec.relation)?)?.feasible {
                    found = Some((a2, b2));
                    break;
                }
            }
            found.ok_or(RiaError::GenerationExhausted(max_attempts))?
        }
    };
    let p = ConstrainedProblem::new(a1, b1, a2, b2, spec.relation)?;
    p.require_feasible()?;
    Ok(p)
}

pub(crate) fn forced_constraint(g: &mut GridSampler, m: usize, n: usize, rel: Relation) -> (QHerm, QMat) {
    let b = g.structured(m, n);
    let h = g.herm(n);
    let base = h.congruence(&b).expect("conformable");
    let rank = g.usize(0, m);
    let gg = g.psd(m, rank);
    let a = match rel {
        Relation::Geq | Relation::Gt => base.sub(&gg),
        Relation::Leq | Relation::Lt => base.add(&gg),
        Relation::Eq => Ok(base),
    }
    .expect("conformable");
    (a, b)
}

/// Share of rejection draws of `(A, B)` that are feasible.
pub fn feasible_fraction(m: usize, n: usize, rel: Relation, trials: usize, seed: u64) -> Result<f64> {
    let mut g = GridSampler::new(seed);
    let mut hits = 0usize;
    for _ in 0..trials {
        let a = g.structured_herm(m);
        let b = g.structured(m, n);
        if lmi_feasible(&LmiProblem::new(a, b, rel)?)?.feasible {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials.max(1) as f64)
}

/// A failed check with the matrices that exhibit it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
    pub witness: BTreeMap<String, QMat>,
}

impl Violation {
    fn new(check: impl Into<String>, detail: impl Into<String>, witness: Vec<(&str, QMat)>) -> Self {
        Violation {
            check: check.into(),
            detail: detail.into(),
            witness: witness.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// Whether a claimed extreme was met by some observed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attainment {
    pub report: String,
    pub objective: Objective,
    pub sense: Sense,
    pub claimed: usize,
    pub observed: Option<usize>,
    pub attained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub instance: String,
    pub checks_run: usize,
    /// All points were enumerated, so non-attainment is itself a violation.
    pub exhaustive: bool,
    pub points: usize,
    pub violations: Vec<Violation>,
    pub attainment: Vec<Attainment>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    fn empty(instance: String) -> Self {
        Verdict { instance, checks_run: 0, exhaustive: false, points: 0, violations: Vec::new(), attainment: Vec::new() }
    }

    /// Was every claimed extreme of `report` attained?
    pub fn all_attained(&self, report: &str) -> bool {
        self.attainment.iter().filter(|a| a.report == report).all(|a| a.attained)
    }

    pub fn attained(&self, report: &str, objective: Objective, sense: Sense) -> bool {
        self.attainment.iter().any(|a| a.report == report && a.objective == objective && a.sense == sense && a.attained)
    }
}

/// What a claim is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `A₁ − B₁XB₁*`.
    Objective,
    /// `X` itself.
    Solution,
    /// A diagonal block of `X`.
    Block { n1: usize, which: SubBlock },
}

impl Target {
    fn observe(&self, p: &ConstrainedProblem, x: &QMat) -> Inertia {
        match *self {
            Target::Objective => inr(p.objective(x).as_mat()),
            Target::Solution => inr(x),
            Target::Block { n1, which } => inr(&SubmatrixSelector::new(n1, p.n() - n1, which).extract(x)),
        }
    }
}

/// Extremal values asserted for one target.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub report: String,
    pub target: Target,
    pub values: ExtremalValues,
}

/// Report label of the constrained objective claim.
pub const OBJECTIVE_REPORT: &str = "objective";
/// Report label of the solution-inertia claim.
pub const SOLUTION_REPORT: &str = "solution";

/// Every closed-form claim that applies to `p`.
pub fn claims(p: &ConstrainedProblem) -> Result<Vec<Claim>> {
    let mut out = vec![Claim { report: OBJECTIVE_REPORT.into(), target: Target::Objective, values: constrained_extremal(p)?.values }];
    if matches!(p.rel, Relation::Geq | Relation::Leq) {
        let rep = solution_inertia_extremal(&p.constraint())?;
        out.push(Claim { report: SOLUTION_REPORT.into(), target: Target::Solution, values: rep.values });
    }
    for n1 in 1..p.n() {
        let (left, right) = split_columns(&p.b2, n1);
        for which in [SubBlock::X1, SubBlock::X3] {
            let sel = SubmatrixSelector::new(n1, p.n() - n1, which);
            let rep = submatrix_extremal(&p.a2, &left, &right, sel, p.rel)?;
            out.push(Claim { report: format!("block {which:?} n1={n1}"), target: Target::Block { n1, which }, values: rep.values });
        }
    }
    Ok(out)
}

/// One evaluated point of the feasible set.
#[derive(Debug, Clone)]
pub struct PointObs {
    pub label: String,
    pub x: QMat,
    pub feasible: bool,
    pub inertias: Vec<Inertia>,
    /// `None` when no Löwner bound applies.
    pub dominated: Option<bool>,
}

pub(crate) fn observe(p: &ConstrainedProblem, claims: &[Claim], bound: Option<&LoewnerBound>, label: String, x: QMat) -> PointObs {
    let feasible = p.constraint().is_solution(&x);
    let inertias = claims.iter().map(|c| c.target.observe(p, &x)).collect();
    let dominated = bound.map(|b| {
        let gap = inr(&(&b.phi - p.objective(&x).as_mat()));
        match b.sense {
            Sense::Max => gap.minus == 0,
            Sense::Min => gap.plus == 0,
        }
    });
    PointObs { label, x, feasible, inertias, dominated }
}

fn instance_witness(p: &ConstrainedProblem, x: &QMat) -> Vec<(&'static str, QMat)> {
    vec![
        ("A1", p.a1.as_mat().clone()),
        ("B1", p.b1.clone()),
        ("A2", p.a2.as_mat().clone()),
        ("B2", p.b2.clone()),
        ("X", x.clone()),
    ]
}

const SLOTS: [(Objective, Sense); 6] = [
    (Objective::Rank, Sense::Max),
    (Objective::Rank, Sense::Min),
    (Objective::Iplus, Sense::Max),
    (Objective::Iplus, Sense::Min),
    (Objective::Iminus, Sense::Max),
    (Objective::Iminus, Sense::Min),
];

fn count(i: &Inertia, o: Objective) -> usize {
    match o {
        Objective::Rank => i.rank(),
        Objective::Iplus => i.plus,
        Objective::Iminus => i.minus,
    }
}

/// Compare observations with claims: bound soundness per point, then
/// attainment per extreme (a violation only when `exhaustive`).
pub(crate) fn judge(p: &ConstrainedProblem, claims: &[Claim], obs: &[PointObs], exhaustive: bool, v: &mut Verdict) {
    v.exhaustive = exhaustive;
    v.points = obs.len();
    for o in obs {
        v.checks_run += 1;
        if !o.feasible {
            v.violations.push(Violation::new("realization solves the constraint", o.label.clone(), instance_witness(p, &o.x)));
        }
        if let Some(ok) = o.dominated {
            v.checks_run += 1;
            if !ok {
                v.violations.push(Violation::new("Loewner bound dominates", o.label.clone(), instance_witness(p, &o.x)));
            }
        }
        for (c, i) in claims.iter().zip(&o.inertias) {
            v.checks_run += 1;
            if !c.values.contains(i) {
                v.violations.push(Violation::new(
                    format!("{} bounds", c.report),
                    format!("{}: observed inertia {i} outside {:?}", o.label, c.values),
                    instance_witness(p, &o.x),
                ));
            }
        }
    }
    for (k, c) in claims.iter().enumerate() {
        for (obj, sense) in SLOTS {
            let counts = obs.iter().filter(|o| o.feasible).map(|o| count(&o.inertias[k], obj));
            let observed = match sense {
                Sense::Max => counts.max(),
                Sense::Min => counts.min(),
            };
            let claimed = c.values.get(obj, sense);
            let attained = observed == Some(claimed);
            v.checks_run += 1;
            if exhaustive && !attained {
                let witness = match obs.first() {
                    Some(o) => instance_witness(p, &o.x),
                    None => Vec::new(),
                };
                v.violations.push(Violation::new(
                    format!("{} {sense} {obj} attained", c.report),
                    format!("claimed {claimed}, exhaustive scan gives {observed:?}"),
                    witness,
                ));
            }
            v.attainment.push(Attainment { report: c.report.clone(), objective: obj, sense, claimed, observed, attained });
        }
    }
}

pub(crate) fn instance_label(p: &ConstrainedProblem, seed: u64) -> String {
    format!("m1={} m2={} n={} rel={} seed={seed:016x}", p.m1(), p.m2(), p.n(), p.rel)
}

/// The matched Löwner bound of `p`, if any.
pub(crate) fn matched_bound(p: &ConstrainedProblem) -> Result<Option<LoewnerBound>> {
    let sense = match p.rel {
        Relation::Geq => Sense::Max,
        Relation::Leq => Sense::Min,
        _ => return Ok(None),
    };
    Ok(loewner_extremal(p, sense)?.bound().cloned())
}

/// Oracle check of every closed-form report on `p`.
///
/// Draws `n_samples` realizations from the constraint's solution family (plus
/// `X̂` and the Löwner extremizer); with `n = 1` the feasible set is scanned
/// exhaustively instead.
pub fn sample_verify(p: &ConstrainedProblem, n_samples: usize, seed: u64) -> Verdict {
    let mut v = Verdict::empty(instance_label(p, seed));
    if let Err(e) = sample_verify_into(p, n_samples, seed, &mut v) {
        v.violations.push(Violation::new("closed-form evaluation", e.to_string(), instance_witness(p, &QMat::zeros(p.n(), p.n()))));
    }
    v
}

fn sample_verify_into(p: &ConstrainedProblem, n_samples: usize, seed: u64, v: &mut Verdict) -> Result<()> {
    let fam = feasible_family(p)?;
    let claims = claims(p)?;
    let bound = matched_bound(p)?;
    let mut structured: Vec<(String, QMat)> = Vec::new();
    if let FeasibleFamily::Inequality(sol) = &fam {
        v.checks_run += 1;
        if let Err(e) = xhat_properties(&p.constraint(), 0, seed) {
            v.violations.push(Violation::new("X-hat identities", e.to_string(), instance_witness(p, sol.xhat.as_mat())));
        }
        structured.push(("xhat".into(), sol.xhat.as_mat().clone()));
    }
    if let Some(b) = &bound {
        structured.push(("loewner extremizer".into(), b.x0.clone()));
    }
    let (points, exhaustive) = if p.n() == 1 {
        (scalar_scan_points(p, &fam)?, true)
    } else {
        let drawn: Vec<Result<(String, QMat)>> = (0..n_samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut g = GridSampler::new(derive_seed(seed, i));
                Ok((format!("sample {i}"), fam.draw(&mut g)?.into_mat()))
            })
            .collect();
        let mut pts = structured;
        for d in drawn {
            pts.push(d?);
        }
        (pts, false)
    };
    let obs: Vec<PointObs> = points.into_par_iter().map(|(l, x)| observe(p, &claims, bound.as_ref(), l, x)).collect();
    judge(p, &claims, &obs, exhaustive, v);
    Ok(())
}

/// LMI-level oracle: every realization solves the relation exactly, `X̂`
/// satisfies its rank/inertia identities, and `A − BX̂B*` is Löwner-extremal
/// over the realizations.
pub fn verify_lmi(p: &LmiProblem, n_samples: usize, seed: u64) -> Verdict {
    let mut v = Verdict::empty(format!("m={} n={} rel={} seed={seed:016x}", p.m(), p.n(), p.rel));
    let witness = |x: &QMat| vec![("A", p.a.as_mat().clone()), ("B", p.b.clone()), ("X", x.clone())];
    let sol = match lmi_general_solution(p) {
        Ok(s) => s,
        Err(e) => {
            v.violations.push(Violation::new("general solution", e.to_string(), witness(&QMat::zeros(p.n(), p.n()))));
            return v;
        }
    };
    let results: Vec<(bool, QMat)> = (0..n_samples as u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut g = GridSampler::new(derive_seed(seed, i));
            let (u, w) = sol.sample_uv(&mut g);
            match sol.realize(&u, &w) {
                Ok(x) => Some((p.is_solution(x.as_mat()), x.into_mat())),
                Err(RiaError::ParameterRejected(_)) => None,
                Err(_) => Some((false, sol.realize_unfiltered(&u, &w).map(|x| x.into_mat()).unwrap_or_else(|_| u.clone()))),
            }
        })
        .collect();
    for (ok, x) in &results {
        v.checks_run += 1;
        if !ok {
            v.violations.push(Violation::new("realization solves the LMI", "", witness(x)));
        }
    }
    v.points = results.len();
    v.checks_run += 1;
    if let Err(e) = xhat_properties(p, n_samples, seed) {
        v.violations.push(Violation::new("X-hat identities and extremality", e.to_string(), witness(sol.xhat.as_mat())));
    }
    v
}

/// Verify many generated instances in parallel; verdicts keep index order.
pub fn verify_batch(specs: &[InstanceSpec]) -> Result<Vec<Verdict>> {
    specs
        .par_iter()
        .map(|s| {
            let p = generate_feasible_instance(s)?;
            Ok(sample_verify(&p, s.samples, s.seed))
        })
        .collect()
}

/// `[B₁, B₂]` split of `B` at column `n1`.
pub fn split_columns(b: &QMat, n1: usize) -> (QMat, QMat) {
    let left = b.select_cols(&(0..n1).collect::<Vec<_>>());
    let right = b.select_cols(&(n1..b.cols()).collect::<Vec<_>>());
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e_instance() -> ConstrainedProblem {
        ConstrainedProblem::new(
            QHerm::int_diag(&[1, -1]),
            QMat::ints(&[&[1], &[0]]),
            QHerm::int_diag(&[1]),
            QMat::ints(&[&[1]]),
            Relation::Geq,
        )
        .unwrap()
    }

    #[test]
    fn forced_instances_are_feasible_and_deterministic() {
        for rel in [Relation::Geq, Relation::Leq, Relation::Eq] {
            for seed in 0..40 {
                let spec = InstanceSpec::new(2, 3, 3, rel, seed);
                let p = generate_feasible_instance(&spec).unwrap();
                let q = generate_feasible_instance(&spec).unwrap();
                assert_eq!(p.a2.as_mat(), q.a2.as_mat());
                assert_eq!(p.b1, q.b1);
            }
        }
    }

    #[test]
    fn rejection_generation() {
        let mut spec = InstanceSpec::new(2, 2, 2, Relation::Geq, 5);
        spec.construction = Construction::Rejection { max_attempts: 500 };
        generate_feasible_instance(&spec).unwrap();
        spec.relation = Relation::Eq;
        spec.m2 = 3;
        spec.n = 1;
        spec.construction = Construction::Rejection { max_attempts: 3 };
        // Random equations are almost never consistent; the outcome is deterministic either way.
        let a = generate_feasible_instance(&spec).is_ok();
        assert_eq!(a, generate_feasible_instance(&spec).is_ok());
        let f = feasible_fraction(2, 2, Relation::Geq, 50, 1).unwrap();
        assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn float_backend_rejected() {
        let mut spec = InstanceSpec::new(1, 1, 1, Relation::Geq, 0);
        spec.backend = Backend::Float;
        assert!(matches!(generate_feasible_instance(&spec), Err(RiaError::BackendMismatch(_))));
    }

    #[test]
    fn e_instance_verdict() {
        let v = sample_verify(&e_instance(), 500, 7);
        assert!(v.pass(), "{:?}", v.violations);
        assert!(v.exhaustive);
        assert!(v.all_attained(OBJECTIVE_REPORT));
        assert!(v.attained(OBJECTIVE_REPORT, Objective::Rank, Sense::Max));
    }

    #[test]
    fn sampled_verdicts_pass_and_are_deterministic() {
        for rel in [Relation::Geq, Relation::Leq, Relation::Eq] {
            for seed in 0..6 {
                let spec = InstanceSpec::new(2, 2, 3, rel, seed);
                let p = generate_feasible_instance(&spec).unwrap();
                let v = sample_verify(&p, 60, seed);
                assert!(v.pass(), "{:?}", v.violations);
                assert!(!v.exhaustive);
                assert!(v.attained(OBJECTIVE_REPORT, Objective::Rank, Sense::Max));
                let w = sample_verify(&p, 60, seed);
                assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&w).unwrap());
            }
        }
    }

    #[test]
    fn lmi_verdicts_pass() {
        for rel in [Relation::Geq, Relation::Leq, Relation::Gt, Relation::Lt] {
            for seed in 0..5 {
                let mut g = GridSampler::new(seed);
                let (a, b) = forced_constraint(&mut g, 2, 3, rel);
                let p = LmiProblem::new(a, b, rel).unwrap();
                if !lmi_feasible(&p).unwrap().feasible {
                    continue;
                }
                let v = verify_lmi(&p, 50, seed);
                assert!(v.pass(), "{:?}", v.violations);
            }
        }
    }

    #[test]
    fn wrong_claim_is_reported_with_witness() {
        let p = e_instance();
        let mut cl = claims(&p).unwrap();
        cl[0].values.max_rank -= 1;
        let obs: Vec<PointObs> = scalar_scan_points(&p, &feasible_family(&p).unwrap())
            .unwrap()
            .into_iter()
            .map(|(l, x)| observe(&p, &cl, None, l, x))
            .collect();
        let mut v = Verdict::empty("e".into());
        judge(&p, &cl, &obs, true, &mut v);
        assert!(!v.pass());
        assert!(v.violations[0].witness.contains_key("X"));
    }
}
