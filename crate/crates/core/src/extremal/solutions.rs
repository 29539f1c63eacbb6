//! Extremal ranks and inertias of a solution `X` of `BXB* ⪰ A` (or `⪯`), and
//! of its diagonal blocks under a column split `B = [B₁, B₂]`.

use serde::Serialize;

use super::{check, constrained_extremal, same_values, z, ConstrainedProblem, ExtremalReport};
use crate::block::bordered;
use crate::error::{Result, RiaError};
use crate::lmi::{lmi_feasible, lmi_xhat, LmiProblem, Relation};
use crate::matrix::{Mat, QHerm, QMat};
use crate::spectral::{inr, is_nsd, is_psd, r, r_h};

/// Extremes of `r(X)`, `i±(X)` over the Hermitian solutions of `BXB* ⪰ A` or `⪯`,
/// with the consequences each implies.
pub fn solution_inertia_extremal(p: &LmiProblem) -> Result<ExtremalReport> {
    if !matches!(p.rel, Relation::Geq | Relation::Leq) {
        return Err(RiaError::UnsupportedRelation(format!("expected >= or <=, got {}", p.rel)));
    }
    let cert = lmi_feasible(p)?;
    if !cert.feasible {
        return Err(RiaError::Infeasible(format!("BXB* {} A has no Hermitian solution", p.rel.symbol())));
    }
    let n = z(p.n());
    let ia = inr(&p.a);
    let (ap, am) = (z(ia.plus), z(ia.minus));
    let rab = z(r_h(&p.a, &p.b));
    let rb = z(r(&p.b));
    let geq = p.rel == Relation::Geq;
    let raw = if geq { [n, ap, n, ap, n + am - rab, 0] } else { [n, am, n + ap - rab, 0, n, am] };
    let rep = ExtremalReport::build(
        if geq { "solution inertia (>=)" } else { "solution inertia (<=)" },
        p.n(),
        raw,
        vec![("i+(A)", ap), ("i-(A)", am), ("r[A,B]", rab), ("r(B)", rb), ("n", n)],
    )?;
    let d = rep.dictionary();
    let xhat = lmi_xhat(&p.a, &p.b)?.formula;
    let ix = inr(&xhat);
    let zero_solves = p.is_solution(&QMat::zeros(p.n(), p.n()));
    let preds = if geq {
        vec![
            check("X-hat attains the minimal i+", true, ix.plus == rep.values.min_iplus),
            check("some solution X > 0", true, d.pd_exists),
            check("every solution X > 0", ap == n, d.all_pd),
            check("X = 0 is a solution", is_nsd(&p.a), zero_solves),
            check("some solution X <= 0", is_nsd(&p.a), d.nsd_exists),
            check("some solution X < 0", am == rab, d.nd_exists),
            check("every solution X >= 0", rb == n && rab == am + n, d.all_psd),
        ]
    } else {
        vec![
            check("X-hat attains the minimal i-", true, ix.minus == rep.values.min_iminus),
            check("some solution X < 0", true, d.nd_exists),
            check("every solution X < 0", am == n, d.all_nd),
            check("X = 0 is a solution", is_psd(&p.a), zero_solves),
            check("some solution X >= 0", is_psd(&p.a), d.psd_exists),
            check("some solution X > 0", ap == rab, d.pd_exists),
            check("every solution X <= 0", rb == n && rab == ap + n, d.all_nsd),
        ]
    };
    rep.with_predicates(preds)
}

/// Which diagonal block of `X = [[X₁, X₂], [X₂*, X₃]]` is studied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubBlock {
    X1,
    X3,
}

/// Column split `n = n₁ + n₂` and the selected block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubmatrixSelector {
    pub n1: usize,
    pub n2: usize,
    pub which: SubBlock,
}

impl SubmatrixSelector {
    pub fn new(n1: usize, n2: usize, which: SubBlock) -> Self {
        SubmatrixSelector { n1, n2, which }
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// Order of the selected block.
    pub fn order(&self) -> usize {
        match self.which {
            SubBlock::X1 => self.n1,
            SubBlock::X3 => self.n2,
        }
    }

    /// `P₁ = [I, 0]` or `P₂ = [0, I]`.
    pub fn projector(&self) -> QMat {
        let k = self.order();
        let off = if self.which == SubBlock::X1 { 0 } else { self.n1 };
        let mut p = QMat::zeros(k, self.n());
        p.set_block(0, off, &QMat::identity(k));
        p
    }

    /// `P X P*`.
    pub fn extract(&self, x: &QMat) -> QMat {
        let off = if self.which == SubBlock::X1 { 0 } else { self.n1 };
        x.submatrix(off, off, self.order(), self.order())
    }
}

/// Extremes of `r`, `i±` of the selected block over all Hermitian solutions of
/// `[B₁, B₂] X [B₁, B₂]* ~ A` with `~` one of `=`, `⪰`, `⪯`.
///
/// Inequalities are evaluated from closed forms and, independently, by
/// specializing the constrained extremes of `0 − P X P*`; the two must agree.
/// The equality case uses the specialization only.
pub fn submatrix_extremal(a: &QHerm, b1: &QMat, b2: &QMat, sel: SubmatrixSelector, rel: Relation) -> Result<ExtremalReport> {
    if b1.cols() != sel.n1 || b2.cols() != sel.n2 {
        return Err(RiaError::DimensionMismatch(format!(
            "selector split {}+{} does not match B1 ({} cols) and B2 ({} cols)",
            sel.n1,
            sel.n2,
            b1.cols(),
            b2.cols()
        )));
    }
    if b1.rows() != a.order() || b2.rows() != a.order() {
        return Err(RiaError::DimensionMismatch("B1 and B2 need as many rows as A".into()));
    }
    let b = Mat::hstack(&[b1, b2])?;
    let k = sel.order();
    let spec = ConstrainedProblem::new(QHerm::zeros(k), sel.projector(), a.clone(), b.clone(), rel)?;
    // Values of −X_sel, swapped back.
    let via = constrained_extremal(&spec)?;
    let values = via.values.swapped();
    if rel == Relation::Eq {
        let mut rep = ExtremalReport::build("submatrix (=)", k, values.as_array().map(z), vec![])?;
        rep.ingredients = via.ingredients;
        return Ok(rep);
    }
    let other = if sel.which == SubBlock::X1 { b2 } else { b1 };
    let mo = inr(&bordered(a.as_mat(), other)?);
    let ro = z(r(other));
    let rab = z(r_h(a, &b));
    let kk = z(k);
    let (mp, mm) = (z(mo.plus), z(mo.minus));
    let raw = if rel == Relation::Geq {
        [kk, mp - ro, kk, mp - ro, kk + mm - rab, 0]
    } else {
        [kk, mm - ro, kk + mp - rab, 0, kk, mm - ro]
    };
    let rep = ExtremalReport::build(
        if rel == Relation::Geq { "submatrix (>=)" } else { "submatrix (<=)" },
        k,
        raw,
        vec![("i+(A,B_other)", mp), ("i-(A,B_other)", mm), ("r(B_other)", ro), ("r[A,B]", rab), ("order", kk)],
    )?;
    same_values("submatrix closed form vs specialization", &rep.values, &values)?;
    Ok(rep)
}
