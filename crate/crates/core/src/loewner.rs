//! Löwner-order extremal values of `A₁ − B₁XB₁*` over the solutions of
//! `B₂XB₂* ⪰ A₂` (maximum) or `B₂XB₂* ⪯ A₂` (minimum).
//!
//! Both cases share `J = [[−A₂, B₂], [B₂*, 0]]`, the extremizer
//! `X₀ = [0, I] J† [0; I]` and the value `A₁ − [0, B₁] J† [0; B₁*]`.

use serde::Serialize;

use crate::block::{ensure, schur_complement_inertia};
use crate::error::{Result, RiaError};
use crate::extremal::{feasible_family, ConstrainedProblem, Sense};
use crate::lmi::{lmi_general_solution, Relation};
use crate::matrix::{Hermitian, QMat};
use crate::sampling::GridSampler;
use crate::spectral::{inr, pinv_q, within, Inertia};

/// A Löwner-extremal value `Phi = A₁ − B₁X₀B₁*` and its extremizer.
#[derive(Debug, Clone, Serialize)]
pub struct LoewnerBound {
    pub sense: Sense,
    pub relation: Relation,
    pub x0: QMat,
    pub phi: QMat,
    pub phi_inertia: Inertia,
    pub m_inertia: Inertia,
    pub j_inertia: Inertia,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LoewnerOutcome {
    Bound(LoewnerBound),
    /// The feasible set is nonempty but has no Löwner-extremal value.
    NoBound { reason: String },
}

impl LoewnerOutcome {
    pub fn bound(&self) -> Option<&LoewnerBound> {
        match self {
            LoewnerOutcome::Bound(b) => Some(b),
            LoewnerOutcome::NoBound { .. } => None,
        }
    }
}

/// Löwner maximum (`Sense::Max`) or minimum of `A₁ − B₁XB₁*` over the
/// constraint's solution set.
///
/// Only `⪰` with `Max` and `⪯` with `Min` can have a bound when `B₁ ≠ 0`:
/// in the other pairings `B₁UU*B₁*` is unbounded along the solution family.
pub fn loewner_extremal(p: &ConstrainedProblem, sense: Sense) -> Result<LoewnerOutcome> {
    if !matches!(p.rel, Relation::Geq | Relation::Leq) {
        return Err(RiaError::UnsupportedRelation(format!("Loewner bounds need a >= or <= constraint, got {}", p.rel)));
    }
    p.require_feasible()?;
    let m_inertia = inr(&p.block_m());
    let j = p.block_j();
    let j_inertia = inr(&j);
    let matched = matches!((p.rel, sense), (Relation::Geq, Sense::Max) | (Relation::Leq, Sense::Min));
    if !matched {
        if !p.b1.is_zero() {
            return Ok(LoewnerOutcome::NoBound {
                reason: format!("B1 != 0 makes A1 - B1XB1* unbounded in the {sense} direction under a {} constraint", p.rel),
            });
        }
        let x0 = lmi_general_solution(&p.constraint())?.xhat.into_mat();
        let phi = p.a1.as_mat().clone();
        let phi_inertia = inr(&phi);
        return Ok(LoewnerOutcome::Bound(LoewnerBound { sense, relation: p.rel, x0, phi, phi_inertia, m_inertia, j_inertia }));
    }
    let (m2, n) = (p.m2(), p.n());
    let mut col = QMat::zeros(m2 + n, p.m1());
    col.set_block(m2, 0, &p.b1.adjoint());
    if !within(&col, &j) {
        return Ok(LoewnerOutcome::NoBound { reason: "R([0; B1*]) is not contained in R(J)".into() });
    }
    let jp = pinv_q(&j);
    let x0 = jp.submatrix(m2, m2, n, n);
    let phi = p.a1.as_mat() - &(&(&col.adjoint() * &jp) * &col);
    ensure(phi == *p.objective(&x0).as_mat(), "Loewner value equals A1 - B1 X0 B1*", || format!("{phi:?}"))?;
    ensure(p.constraint().is_solution(&x0), "Loewner extremizer is feasible", || format!("X0 = {x0:?}"))?;
    let phi_inertia = inr(&phi);
    let expected = Inertia::new(
        m_inertia.plus.wrapping_sub(j_inertia.plus),
        m_inertia.minus.wrapping_sub(j_inertia.minus),
        0,
    );
    ensure(
        m_inertia.plus >= j_inertia.plus
            && m_inertia.minus >= j_inertia.minus
            && phi_inertia.plus == expected.plus
            && phi_inertia.minus == expected.minus,
        "Loewner value inertia equals i(M) - i(J)",
        || format!("i(Phi)={phi_inertia}, i(M)={m_inertia}, i(J)={j_inertia}"),
    )?;
    let schur = schur_complement_inertia(&Hermitian::from_construction(j), &col, &p.a1)?;
    ensure(schur == phi_inertia, "Loewner value is the Schur complement of J in M", || {
        format!("Schur complement inertia {schur}, value inertia {phi_inertia}")
    })?;
    Ok(LoewnerOutcome::Bound(LoewnerBound { sense, relation: p.rel, x0, phi, phi_inertia, m_inertia, j_inertia }))
}

impl LoewnerBound {
    /// Check `Phi ⪰ A₁ − B₁XB₁*` (or `⪯`) on `samples` grid draws from the
    /// constraint's solution family.
    pub fn verify_dominance(&self, p: &ConstrainedProblem, samples: usize, seed: u64) -> Result<()> {
        let fam = feasible_family(p)?;
        let mut g = GridSampler::new(seed);
        for _ in 0..samples {
            let x = fam.draw(&mut g)?;
            let gap = inr(&(&self.phi - p.objective(x.as_mat()).as_mat()));
            let ok = match self.sense {
                Sense::Max => gap.minus == 0,
                Sense::Min => gap.plus == 0,
            };
            ensure(ok, "Loewner dominance", || format!("X = {:?} beats Phi = {:?}", x.as_mat(), self.phi))?;
        }
        Ok(())
    }
}
