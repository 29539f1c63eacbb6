//! Closed-form global extremes of rank and inertia for Hermitian matrix
//! functions, with and without linear matrix (in)equality constraints.
//!
//! Every report carries the block-matrix ranks and inertias it was built from,
//! so a disagreement can be traced to a single ingredient.

mod basic;
mod constrained;
mod solutions;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use crate::block::PredicateCheck;
pub use crate::lmi::ExtremalValues;
pub use basic::{congruence_extremal, quadratic_extremal, unconstrained_extremal, QuadraticSign};
pub use constrained::{
    analyze_constrained, constrained_extremal, equality_constrained_extremal, inequality_constrained_extremal,
};
pub use solutions::{solution_inertia_extremal, submatrix_extremal, SubBlock, SubmatrixSelector};

use crate::block::{bordered, ensure};
use crate::equations::{solve_axa_hermitian, ParametricAffineFamily};
use crate::error::{Result, RiaError};
use crate::lmi::{lmi_feasible, lmi_general_solution, FeasibilityCertificate, LmiProblem, ParametricSolution, Relation};
use crate::matrix::{Hermitian, Mat, QHerm, QMat};
use crate::sampling::GridSampler;
use crate::spectral::Inertia;

/// Which count is optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Rank,
    Iplus,
    Iminus,
}

/// Direction of optimization (also the Löwner sense).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

impl FromStr for Objective {
    type Err = RiaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rank" | "r" => Ok(Objective::Rank),
            "iplus" | "i+" => Ok(Objective::Iplus),
            "iminus" | "i-" => Ok(Objective::Iminus),
            o => Err(RiaError::Parse(format!("unknown objective '{o}'"))),
        }
    }
}

impl FromStr for Sense {
    type Err = RiaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "max" => Ok(Sense::Max),
            "min" => Ok(Sense::Min),
            o => Err(RiaError::Parse(format!("unknown sense '{o}'"))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Rank => "rank",
            Objective::Iplus => "iplus",
            Objective::Iminus => "iminus",
        })
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Max => "max",
            Sense::Min => "min",
        })
    }
}

impl ExtremalValues {
    pub fn get(&self, objective: Objective, sense: Sense) -> usize {
        match (objective, sense) {
            (Objective::Rank, Sense::Max) => self.max_rank,
            (Objective::Rank, Sense::Min) => self.min_rank,
            (Objective::Iplus, Sense::Max) => self.max_iplus,
            (Objective::Iplus, Sense::Min) => self.min_iplus,
            (Objective::Iminus, Sense::Max) => self.max_iminus,
            (Objective::Iminus, Sense::Min) => self.min_iminus,
        }
    }

    pub fn set(&mut self, objective: Objective, sense: Sense, v: usize) {
        let slot = match (objective, sense) {
            (Objective::Rank, Sense::Max) => &mut self.max_rank,
            (Objective::Rank, Sense::Min) => &mut self.min_rank,
            (Objective::Iplus, Sense::Max) => &mut self.max_iplus,
            (Objective::Iplus, Sense::Min) => &mut self.min_iplus,
            (Objective::Iminus, Sense::Max) => &mut self.max_iminus,
            (Objective::Iminus, Sense::Min) => &mut self.min_iminus,
        };
        *slot = v;
    }

    /// Translate the six values into existence and invariance statements for
    /// a function with values of order `m`.
    pub fn dictionary(&self, m: usize) -> Dictionary {
        Dictionary {
            nonsingular_exists: self.max_rank == m,
            all_nonsingular: self.min_rank == m,
            zero_exists: self.min_rank == 0,
            all_zero: self.max_rank == 0,
            rank_invariant: self.max_rank == self.min_rank,
            pd_exists: self.max_iplus == m,
            all_pd: self.min_iplus == m,
            nd_exists: self.max_iminus == m,
            all_nd: self.min_iminus == m,
            psd_exists: self.min_iminus == 0,
            all_psd: self.max_iminus == 0,
            nsd_exists: self.min_iplus == 0,
            all_nsd: self.max_iplus == 0,
            iplus_invariant: self.max_iplus == self.min_iplus,
            iminus_invariant: self.max_iminus == self.min_iminus,
        }
    }
}

/// Existence and invariance statements read off the extremal values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dictionary {
    pub nonsingular_exists: bool,
    pub all_nonsingular: bool,
    pub zero_exists: bool,
    pub all_zero: bool,
    pub rank_invariant: bool,
    pub pd_exists: bool,
    pub all_pd: bool,
    pub nd_exists: bool,
    pub all_nd: bool,
    pub psd_exists: bool,
    pub all_psd: bool,
    pub nsd_exists: bool,
    pub all_nsd: bool,
    pub iplus_invariant: bool,
    pub iminus_invariant: bool,
}

/// Extremal values plus the ingredients and predicate battery behind them.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub kind: String,
    /// Order of the matrix function's values.
    pub order: usize,
    #[serde(flatten)]
    pub values: ExtremalValues,
    pub ingredients: BTreeMap<String, i64>,
    pub predicates: Vec<PredicateCheck>,
}

pub(crate) fn z(v: usize) -> i64 {
    v as i64
}

impl ExtremalReport {
    /// Validate six signed values `[max r, min r, max i+, min i+, max i-, min i-]`.
    pub(crate) fn build(kind: &str, order: usize, raw: [i64; 6], ingredients: Vec<(&str, i64)>) -> Result<Self> {
        let ingredients: BTreeMap<String, i64> = ingredients.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let fail = |what: String| {
            RiaError::identity(&format!("{kind} extremal values"), format!("{what}; values {raw:?}, ingredients {ingredients:?}"))
        };
        let mut v = [0usize; 6];
        for (slot, &x) in v.iter_mut().zip(raw.iter()) {
            if x < 0 || x > z(order) {
                return Err(fail(format!("value {x} outside 0..={order}")));
            }
            *slot = x as usize;
        }
        let values = ExtremalValues::from_array(v);
        if values.min_rank > values.max_rank || values.min_iplus > values.max_iplus || values.min_iminus > values.max_iminus {
            return Err(fail("a minimum exceeds its maximum".into()));
        }
        if values.min_rank < values.min_iplus + values.min_iminus || values.max_rank > values.max_iplus + values.max_iminus {
            return Err(fail("rank extremes incompatible with inertia extremes".into()));
        }
        Ok(ExtremalReport { kind: kind.to_string(), order, values, ingredients, predicates: Vec::new() })
    }

    pub fn value(&self, objective: Objective, sense: Sense) -> usize {
        self.values.get(objective, sense)
    }

    pub fn dictionary(&self) -> Dictionary {
        self.values.dictionary(self.order)
    }

    /// Attach predicates; every one must agree between its two routes.
    pub(crate) fn with_predicates(mut self, preds: Vec<PredicateCheck>) -> Result<Self> {
        if let Some(bad) = preds.iter().find(|p| !p.agrees()) {
            return Err(RiaError::identity(
                &format!("{} predicate", self.kind),
                format!("'{}': closed form {}, extremal values {}; values {:?}, ingredients {:?}", bad.name, bad.closed_form, bad.direct, self.values, self.ingredients),
            ));
        }
        self.predicates = preds;
        Ok(self)
    }

    /// Does an observed value of the function respect every bound?
    pub fn admits(&self, i: &Inertia) -> bool {
        self.values.contains(i)
    }
}

/// `min_{X ∈ T} A₁ − B₁XB₁*` where `T` is the Hermitian solution set of
/// `B₂XB₂* ~ A₂`.
#[derive(Debug, Clone)]
pub struct ConstrainedProblem {
    pub a1: QHerm,
    pub b1: QMat,
    pub a2: QHerm,
    pub b2: QMat,
    pub rel: Relation,
}

impl ConstrainedProblem {
    pub fn new(a1: QHerm, b1: QMat, a2: QHerm, b2: QMat, rel: Relation) -> Result<Self> {
        if a1.order() != b1.rows() || a2.order() != b2.rows() {
            return Err(RiaError::DimensionMismatch("A_i must have as many rows as B_i".into()));
        }
        if b1.cols() != b2.cols() {
            return Err(RiaError::DimensionMismatch(format!("B1 has {} columns but B2 has {}", b1.cols(), b2.cols())));
        }
        Ok(ConstrainedProblem { a1, b1, a2, b2, rel })
    }

    /// Order of the objective's values.
    pub fn m1(&self) -> usize {
        self.a1.order()
    }

    pub fn m2(&self) -> usize {
        self.a2.order()
    }

    pub fn n(&self) -> usize {
        self.b1.cols()
    }

    pub fn constraint(&self) -> LmiProblem {
        LmiProblem { a: self.a2.clone(), b: self.b2.clone(), rel: self.rel }
    }

    /// `A₁ − B₁XB₁*`.
    pub fn objective(&self, x: &QMat) -> QHerm {
        let bxb = &(&self.b1 * x) * &self.b1.adjoint();
        Hermitian::from_construction(self.a1.as_mat() - &bxb)
    }

    /// `[[A₁, 0, B₁], [0, −A₂, B₂], [B₁*, B₂*, 0]]`.
    pub fn block_m(&self) -> QMat {
        let (m1, m2, n) = (self.m1(), self.m2(), self.n());
        let na2 = -self.a2.as_mat();
        let (z12, z21, zn) = (QMat::zeros(m1, m2), QMat::zeros(m2, m1), QMat::zeros(n, n));
        let (b1a, b2a) = (self.b1.adjoint(), self.b2.adjoint());
        Mat::block(&[vec![self.a1.as_mat(), &z12, &self.b1], vec![&z21, &na2, &self.b2], vec![&b1a, &b2a, &zn]])
            .expect("conformable blocks")
    }

    /// `[[A₁, B₁, 0], [B₁*, 0, B₂*]]`.
    pub fn block_n(&self) -> QMat {
        let (m1, m2, n) = (self.m1(), self.m2(), self.n());
        let b1a = self.b1.adjoint();
        let b2a = self.b2.adjoint();
        let (z1, zn) = (QMat::zeros(m1, m2), QMat::zeros(n, n));
        Mat::block(&[vec![self.a1.as_mat(), &self.b1, &z1], vec![&b1a, &zn, &b2a]]).expect("conformable blocks")
    }

    /// `[[A₁, B₁], [B₁*, 0]]`.
    pub fn block_m1(&self) -> QMat {
        bordered(self.a1.as_mat(), &self.b1).expect("conformable blocks")
    }

    /// `[[−A₂, B₂], [B₂*, 0]]`.
    pub fn block_j(&self) -> QMat {
        bordered(&-self.a2.as_mat(), &self.b2).expect("conformable blocks")
    }

    /// `(−A₁, B₁, −A₂, B₂)` with the reversed relation; objective values negate.
    pub fn negated(&self) -> Self {
        ConstrainedProblem {
            a1: self.a1.neg(),
            b1: self.b1.clone(),
            a2: self.a2.neg(),
            b2: self.b2.clone(),
            rel: self.rel.negated(),
        }
    }

    /// Re-verify the constraint is solvable.
    pub fn require_feasible(&self) -> Result<FeasibilityCertificate> {
        if self.rel.is_strict() {
            return Err(RiaError::UnsupportedRelation(format!("constraint relation {} is strict", self.rel)));
        }
        let cert = lmi_feasible(&self.constraint())?;
        if !cert.feasible {
            let msg = format!("B2 X B2* {} A2 has no Hermitian solution ({})", self.rel.symbol(), cert.criterion);
            return Err(if self.rel == Relation::Eq {
                RiaError::InconsistentConstraint(msg)
            } else {
                RiaError::InfeasibleConstraint(msg)
            });
        }
        Ok(cert)
    }
}

/// Parametrization of a constraint's solution set, for sampling.
#[derive(Debug, Clone)]
pub enum FeasibleFamily {
    Inequality(ParametricSolution),
    Equation(ParametricAffineFamily),
}

impl FeasibleFamily {
    pub fn draw(&self, g: &mut GridSampler) -> Result<QHerm> {
        match self {
            FeasibleFamily::Inequality(s) => {
                let (u, v) = s.sample_uv(g);
                s.realize_unfiltered(&u, &v)
            }
            FeasibleFamily::Equation(f) => f.realize(&f.sample_params(g)),
        }
    }
}

/// The solution family of the constraint of `p`.
pub fn feasible_family(p: &ConstrainedProblem) -> Result<FeasibleFamily> {
    p.require_feasible()?;
    if p.rel == Relation::Eq {
        let f = solve_axa_hermitian(&p.b2, &p.a2).map_err(|e| RiaError::InconsistentConstraint(e.to_string()))?;
        Ok(FeasibleFamily::Equation(f))
    } else {
        Ok(FeasibleFamily::Inequality(lmi_general_solution(&p.constraint())?))
    }
}

pub(crate) fn check(name: &str, closed_form: bool, direct: bool) -> PredicateCheck {
    PredicateCheck::new(name, closed_form, direct)
}

pub(crate) fn same_values(kind: &str, a: &ExtremalValues, b: &ExtremalValues) -> Result<()> {
    ensure(a == b, kind, || format!("{a:?} vs {b:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_reads_values() {
        let v = ExtremalValues::from_array([2, 1, 1, 0, 2, 1]);
        let d = v.dictionary(2);
        assert!(d.nonsingular_exists && !d.all_nonsingular && d.nsd_exists && d.nd_exists);
        assert!(!d.psd_exists && !d.rank_invariant);
        assert_eq!(v.get(Objective::Iminus, Sense::Min), 1);
        assert_eq!("i+".parse::<Objective>().unwrap(), Objective::Iplus);
    }

    #[test]
    fn build_rejects_inconsistent() {
        assert!(ExtremalReport::build("t", 2, [2, 1, 1, 0, 2, 1], vec![]).is_ok());
        assert!(ExtremalReport::build("t", 2, [1, 2, 1, 0, 2, 1], vec![]).is_err());
        assert!(ExtremalReport::build("t", 2, [3, 1, 1, 0, 2, 1], vec![]).is_err());
        assert!(ExtremalReport::build("t", 2, [2, -1, 1, 0, 2, 1], vec![]).is_err());
        assert!(ExtremalReport::build("t", 2, [2, 0, 1, 0, 0, 0], vec![]).is_err());
    }

    #[test]
    fn e_instance_blocks() {
        let p = ConstrainedProblem::new(
            QHerm::int_diag(&[1, -1]),
            QMat::ints(&[&[1], &[0]]),
            QHerm::int_diag(&[1]),
            QMat::ints(&[&[1]]),
            Relation::Geq,
        )
        .unwrap();
        use crate::spectral::{inr, r};
        assert_eq!(inr(&p.block_m()), Inertia::new(1, 2, 1));
        assert_eq!(inr(&p.block_m1()), Inertia::new(1, 2, 0));
        assert_eq!(r(&p.block_n()), 3);
    }
}
