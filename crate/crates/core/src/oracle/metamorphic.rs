//! Metamorphic relations: negation, congruence and backend agreement.

use super::{instance_label, Verdict, Violation};
use crate::error::Result;
use crate::extremal::{constrained_extremal, ConstrainedProblem, Sense};
use crate::lmi::Relation;
use crate::loewner::{loewner_extremal, LoewnerOutcome};
use crate::matrix::{Hermitian, QMat};
use crate::sampling::GridSampler;
use crate::spectral::{inertia, inr, r, rank, ToleranceConfig};

fn witness(p: &ConstrainedProblem) -> Vec<(&'static str, QMat)> {
    vec![("A1", p.a1.as_mat().clone()), ("B1", p.b1.clone()), ("A2", p.a2.as_mat().clone()), ("B2", p.b2.clone())]
}

/// `(PA₁P*, PB₁T, QA₂Q*, QB₂T)`: objective and constraint transform by
/// congruence and `X ↦ T⁻¹XT⁻*` maps solution sets onto each other.
pub fn congruence_transform(p: &ConstrainedProblem, pm: &QMat, qm: &QMat, t: &QMat) -> Result<ConstrainedProblem> {
    ConstrainedProblem::new(p.a1.congruence(pm)?, &(pm * &p.b1) * t, p.a2.congruence(qm)?, &(qm * &p.b2) * t, p.rel)
}

/// Negation swap, congruence invariance of every ingredient, and exact vs
/// float rank/inertia of the block matrices. `seed` drives the congruences.
pub fn metamorphic_suite(p: &ConstrainedProblem, seed: u64) -> Verdict {
    let mut v = Verdict::empty(instance_label(p, seed));
    if let Err(e) = run(p, seed, &mut v) {
        v.violations.push(Violation::new("metamorphic evaluation", e.to_string(), witness(p)));
    }
    v
}

fn run(p: &ConstrainedProblem, seed: u64, v: &mut Verdict) -> Result<()> {
    let base = constrained_extremal(p)?;
    let neg = p.negated();
    let nrep = constrained_extremal(&neg)?;
    v.checks_run += 1;
    if nrep.values != base.values.swapped() {
        v.violations.push(Violation::new(
            "negation swaps i+ and i-",
            format!("{:?} vs swapped {:?}", nrep.values, base.values.swapped()),
            witness(p),
        ));
    }
    if matches!(p.rel, Relation::Geq | Relation::Leq) {
        for sense in [Sense::Max, Sense::Min] {
            let other = if sense == Sense::Max { Sense::Min } else { Sense::Max };
            let (a, b) = (loewner_extremal(p, sense)?, loewner_extremal(&neg, other)?);
            v.checks_run += 1;
            let ok = match (&a, &b) {
                (LoewnerOutcome::Bound(x), LoewnerOutcome::Bound(y)) => y.phi == -&x.phi && neg.constraint().is_solution(&y.x0),
                (LoewnerOutcome::NoBound { .. }, LoewnerOutcome::NoBound { .. }) => true,
                _ => false,
            };
            if !ok {
                v.violations.push(Violation::new("negation maps Loewner bounds", format!("{sense}: {a:?} vs {b:?}"), witness(p)));
            }
        }
    }

    let mut g = GridSampler::new(seed);
    let transforms = [
        (g.nonsingular(p.m1()), g.nonsingular(p.m2()), g.nonsingular(p.n()), "random nonsingular"),
        (g.unit_diagonal(p.m1()), g.unit_diagonal(p.m2()), g.unit_diagonal(p.n()), "unitary diagonal"),
    ];
    for (pm, qm, t, name) in transforms {
        let q = congruence_transform(p, &pm, &qm, &t)?;
        let rep = constrained_extremal(&q)?;
        v.checks_run += 1;
        if rep.ingredients != base.ingredients || rep.values != base.values {
            let mut w = witness(p);
            w.extend([("P", pm), ("Q", qm), ("T", t)]);
            v.violations.push(Violation::new(
                format!("congruence ({name}) preserves ingredients"),
                format!("{:?} vs {:?}", base.ingredients, rep.ingredients),
                w,
            ));
        }
    }

    // Float results near a singular-value gap are ambiguous; only compare when
    // two thresholds agree.
    let loose = ToleranceConfig::with_rank_tol(1e-6);
    let tight = ToleranceConfig::with_rank_tol(1e-9);
    let blocks = [("M", p.block_m()), ("M1", p.block_m1()), ("J", p.block_j())];
    for (name, m) in blocks {
        let h = Hermitian::from_construction(m.lift());
        let (fl, ft) = (inertia(&h, &loose), inertia(&h, &tight));
        if fl != ft {
            continue;
        }
        v.checks_run += 1;
        if ft != inr(&m) {
            v.violations.push(Violation::new(format!("backends agree on i({name})"), format!("exact {} float {ft}", inr(&m)), witness(p)));
        }
    }
    let n = p.block_n();
    let fl = n.lift();
    if rank(&fl, &loose) == rank(&fl, &tight) {
        v.checks_run += 1;
        if rank(&fl, &tight) != r(&n) {
            v.violations.push(Violation::new("backends agree on r(N)", format!("exact {} float {}", r(&n), rank(&fl, &tight)), witness(p)));
        }
    }
    Ok(())
}
