//! Exhaustive treatment of `n = 1` instances and the fault-injection self-test.
//!
//! With one column, `X = [x]` is real and the feasible set is an interval.
//! `A₁ − x·bb*` is a rank-one pencil: its rank can only change at `x = 0` or
//! at `x = 1/(b*A₁†b)`, so inertia is constant between those points and the
//! interval endpoints. Evaluating every breakpoint plus interior points of
//! each piece enumerates all attainable inertias.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{claims, judge, observe, Claim, InstanceSpec, PointObs, Verdict, SLOTS};
use crate::error::Result;
use crate::extremal::{feasible_family, ConstrainedProblem, FeasibleFamily, Objective, Sense};
use crate::lmi::Relation;
use crate::matrix::QMat;
use crate::scalar::{Qi, Scalar};
use crate::spectral::{pinv_q, within};

fn scalar(x: &BigRational) -> QMat {
    QMat::from_rows(vec![vec![Qi::new(x.clone(), BigRational::zero())]])
}

/// Points covering every inertia class of an `n = 1` instance.
pub fn scalar_scan_points(p: &ConstrainedProblem, fam: &FeasibleFamily) -> Result<Vec<(String, QMat)>> {
    assert_eq!(p.n(), 1, "scalar scan needs n = 1");
    // (lower, upper); None is unbounded.
    let (lo, hi): (Option<BigRational>, Option<BigRational>) = match fam {
        FeasibleFamily::Inequality(sol) => {
            let xhat = sol.xhat.as_mat()[(0, 0)].re.clone();
            if !sol.f_b.is_zero() {
                (None, None)
            } else if sol.sign > 0 {
                (Some(xhat), None)
            } else {
                (None, Some(xhat))
            }
        }
        FeasibleFamily::Equation(f) => {
            if f.projector.is_zero() {
                let x = f.base.as_mat()[(0, 0)].re.clone();
                (Some(x.clone()), Some(x))
            } else {
                (None, None)
            }
        }
    };
    let inside = |x: &BigRational| lo.as_ref().map_or(true, |l| x >= l) && hi.as_ref().map_or(true, |h| x <= h);
    let mut crit: Vec<BigRational> = lo.iter().chain(hi.iter()).cloned().collect();
    crit.push(BigRational::zero());
    let b = &p.b1;
    if within(b, p.a1.as_mat()) {
        let s = &(&b.adjoint() * &pinv_q(p.a1.as_mat())) * b;
        if !s[(0, 0)].is_zero() {
            crit.push(BigRational::one() / s[(0, 0)].re.clone());
        }
    }
    crit.retain(|x| inside(x));
    crit.sort();
    crit.dedup();
    let one = BigRational::one();
    let mut pts: Vec<BigRational> = crit.clone();
    for w in crit.windows(2) {
        let d = &w[1] - &w[0];
        for k in 1..4 {
            pts.push(&w[0] + &d * BigRational::new(BigInt::from(k), BigInt::from(4)));
        }
    }
    if let (Some(first), Some(last)) = (crit.first(), crit.last()) {
        if lo.is_none() {
            pts.push(first - &one);
            pts.push(first - BigRational::from_integer(BigInt::from(7)));
        }
        if hi.is_none() {
            pts.push(last + &one);
            pts.push(last + BigRational::from_integer(BigInt::from(7)));
        }
    }
    Ok(pts.iter().map(|x| (format!("x = {x}"), scalar(x))).collect())
}

/// Deterministic family of `n = 1` instances, small enough to enumerate.
pub fn curated_suite() -> Vec<ConstrainedProblem> {
    let mut out = vec![ConstrainedProblem::new(
        crate::matrix::QHerm::int_diag(&[1, -1]),
        QMat::ints(&[&[1], &[0]]),
        crate::matrix::QHerm::int_diag(&[1]),
        QMat::ints(&[&[1]]),
        Relation::Geq,
    )
    .expect("conformable")];
    let rels = [Relation::Geq, Relation::Leq, Relation::Eq];
    for seed in 0..60u64 {
        let rel = rels[(seed % 3) as usize];
        let m1 = 1 + (seed as usize / 3) % 3;
        let m2 = 1 + (seed as usize / 9) % 2;
        let spec = InstanceSpec::new(m1, m2, 1, rel, 0xC0FFEE ^ seed);
        out.push(super::generate_feasible_instance(&spec).expect("forced instances are feasible"));
    }
    out
}

/// Catch statistics for one perturbed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaultOutcome {
    pub report: String,
    pub objective: Objective,
    pub sense: Sense,
    pub delta: i8,
    pub trials: usize,
    /// Caught by a bound violation or a failed attainment.
    pub caught: usize,
    /// The perturbed value left the admissible range (e.g. `0 − 1`).
    pub out_of_range: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FaultReport {
    pub instances: usize,
    /// Instances whose unperturbed verdict failed.
    pub baseline_failures: usize,
    pub outcomes: Vec<FaultOutcome>,
}

impl FaultReport {
    /// No perturbation slipped through on every instance it was tried on.
    pub fn all_caught(&self) -> bool {
        self.baseline_failures == 0 && self.outcomes.iter().all(|o| o.caught + o.out_of_range == o.trials && o.trials > 0)
    }
}

/// Perturb each closed-form value by ±1 and check the exhaustive oracle
/// rejects it on every instance of `suite`.
pub fn fault_injection(suite: &[ConstrainedProblem]) -> Result<FaultReport> {
    let mut outcomes: Vec<FaultOutcome> = Vec::new();
    let mut baseline_failures = 0;
    for p in suite {
        let fam = feasible_family(p)?;
        let cl = claims(p)?;
        let obs: Vec<PointObs> =
            scalar_scan_points(p, &fam)?.into_iter().map(|(l, x)| observe(p, &cl, None, l, x)).collect();
        let mut base = Verdict::empty(String::new());
        judge(p, &cl, &obs, true, &mut base);
        if !base.pass() {
            baseline_failures += 1;
        }
        for (k, c) in cl.iter().enumerate() {
            for (obj, sense) in SLOTS {
                for delta in [1i8, -1] {
                    let slot = outcomes.iter().position(|o| o.report == c.report && o.objective == obj && o.sense == sense && o.delta == delta);
                    let idx = slot.unwrap_or_else(|| {
                        outcomes.push(FaultOutcome { report: c.report.clone(), objective: obj, sense, delta, trials: 0, caught: 0, out_of_range: 0 });
                        outcomes.len() - 1
                    });
                    outcomes[idx].trials += 1;
                    let v = c.values.get(obj, sense) as i64 + delta as i64;
                    if v < 0 {
                        outcomes[idx].out_of_range += 1;
                        continue;
                    }
                    let mut bad: Vec<Claim> = cl.clone();
                    bad[k].values.set(obj, sense, v as usize);
                    let mut verdict = Verdict::empty(String::new());
                    judge(p, &bad, &obs, true, &mut verdict);
                    if !verdict.pass() {
                        outcomes[idx].caught += 1;
                    }
                }
            }
        }
    }
    Ok(FaultReport { instances: suite.len(), baseline_failures, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_instance_scan_points() {
        let p = &curated_suite()[0];
        let pts = scalar_scan_points(p, &feasible_family(p).unwrap()).unwrap();
        // Feasible set is x >= 1; breakpoint 1 = 1/(b*A1†b).
        assert!(pts.iter().all(|(_, x)| x[(0, 0)].re >= BigRational::one()));
        assert!(pts.iter().any(|(_, x)| x[(0, 0)] == Qi::int(1, 0)));
    }

    #[test]
    fn curated_suite_passes_exhaustively() {
        for p in curated_suite() {
            let v = super::super::sample_verify(&p, 0, 1);
            assert!(v.pass(), "{:?}", v.violations);
            assert!(v.exhaustive);
            assert!(v.attainment.iter().all(|a| a.attained));
        }
    }

    #[test]
    fn every_fault_is_caught() {
        let rep = fault_injection(&curated_suite()).unwrap();
        assert_eq!(rep.baseline_failures, 0);
        assert!(rep.all_caught(), "{:?}", rep.outcomes.iter().filter(|o| o.caught + o.out_of_range < o.trials).collect::<Vec<_>>());
        assert!(rep.outcomes.iter().any(|o| o.report == "solution"));
    }
}
