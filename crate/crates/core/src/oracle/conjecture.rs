//! Search for a common Hermitian solution of several `BᵢXBᵢ* ⪰ Aᵢ`.
//!
//! Every solution set of a `⪰` constraint is closed upward in the Löwner
//! order, so besides each `X̂ᵢ` the search tries scaled identities `2ʲ·I`
//! before falling back to a grid scan over the first feasible family.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::forced_constraint;
use crate::error::{Result, RiaError};
use crate::extremal::ConstrainedProblem;
use crate::lmi::{lmi_feasible, lmi_general_solution, lmi_xhat, LmiProblem, Relation};
use crate::matrix::QMat;
use crate::sampling::{derive_seed, GridSampler};
use crate::scalar::Qi;
use crate::spectral::{inr, r_h};

/// Largest row count and the shared column count of generated LMIs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureDims {
    pub m: usize,
    pub n: usize,
}

/// Where a common solution was found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchHit {
    pub stage: String,
    pub x: QMat,
}

const MAX_DOUBLINGS: u32 = 48;
const GRID_BUDGET: usize = 64;

fn common(lmis: &[LmiProblem], x: &QMat) -> bool {
    lmis.iter().all(|p| p.is_solution(x))
}

/// Look for `X` solving every LMI in `lmis` (all `⪰`). `None` means the
/// budget ran out, which is not a proof that no common solution exists.
pub fn common_solution_search(lmis: &[LmiProblem], seed: u64) -> Option<SearchHit> {
    let n = lmis.first()?.n();
    for (i, p) in lmis.iter().enumerate() {
        if let Ok(routes) = lmi_xhat(&p.a, &p.b) {
            if common(lmis, routes.formula.as_mat()) {
                return Some(SearchHit { stage: format!("xhat {i}"), x: routes.formula.into_mat() });
            }
        }
    }
    for j in 0..=MAX_DOUBLINGS {
        let t = Qi::new(BigRational::from_integer(BigInt::one() << j), BigRational::zero());
        let x = QMat::identity(n).scale(&t);
        if common(lmis, &x) {
            return Some(SearchHit { stage: format!("scaled identity 2^{j}"), x });
        }
    }
    let fam = lmis.iter().find_map(|p| lmi_general_solution(p).ok())?;
    let mut g = GridSampler::new(seed);
    for k in 0..GRID_BUDGET {
        let (u, v) = fam.sample_uv(&mut g);
        let x = fam.realize_unfiltered(&u, &v).ok()?.into_mat();
        if common(lmis, &x) {
            return Some(SearchHit { stage: format!("grid {k}"), x });
        }
    }
    None
}

/// A tuple of individually feasible LMIs with no common solution found.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub index: usize,
    pub lmis: Vec<BTreeMap<String, QMat>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub dims: ConjectureDims,
    pub seed: u64,
    pub instances: usize,
    pub common_found: usize,
    /// Hits per search stage family (`xhat`, `scaled identity`, `grid`).
    pub by_stage: BTreeMap<String, usize>,
    pub candidates: Vec<Candidate>,
}

fn draw_feasible_lmi(g: &mut GridSampler, dims: ConjectureDims) -> Result<LmiProblem> {
    let m = g.usize(1, dims.m);
    let (a, b) = forced_constraint(g, m, dims.n, Relation::Geq);
    let p = LmiProblem::new(a, b, Relation::Geq)?;
    if !lmi_feasible(&p)?.feasible {
        return Err(RiaError::identity("forced LMI is feasible", format!("{p:?}")));
    }
    Ok(p)
}

fn serialize(lmis: &[LmiProblem]) -> Vec<BTreeMap<String, QMat>> {
    lmis.iter().map(|p| BTreeMap::from([("A".to_string(), p.a.as_mat().clone()), ("B".to_string(), p.b.clone())])).collect()
}

/// Generate `n_instances` tuples of `k` individually feasible `⪰` LMIs and
/// search each for a common solution. Misses are reported as candidates.
pub fn conjecture35_search(dims: ConjectureDims, k: usize, n_instances: usize, seed: u64) -> Result<ConjectureReport> {
    if k < 2 {
        return Err(RiaError::Parse(format!("need at least two LMIs, got k = {k}")));
    }
    if dims.m == 0 || dims.n == 0 {
        return Err(RiaError::DimensionMismatch("dimensions must be positive".into()));
    }
    let results: Vec<Result<(Vec<LmiProblem>, Option<SearchHit>)>> = (0..n_instances as u64)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i);
            let mut g = GridSampler::new(s);
            let lmis = (0..k).map(|_| draw_feasible_lmi(&mut g, dims)).collect::<Result<Vec<_>>>()?;
            let hit = common_solution_search(&lmis, s);
            Ok((lmis, hit))
        })
        .collect();
    let mut rep = ConjectureReport {
        k,
        dims,
        seed,
        instances: n_instances,
        common_found: 0,
        by_stage: BTreeMap::new(),
        candidates: Vec::new(),
    };
    for (index, res) in results.into_iter().enumerate() {
        let (lmis, hit) = res?;
        match hit {
            Some(h) => {
                rep.common_found += 1;
                let family = h.stage.trim_end_matches(|c: char| c.is_ascii_digit() || c == '^' || c == ' ').to_string();
                *rep.by_stage.entry(family).or_default() += 1;
            }
            None => rep.candidates.push(Candidate { index, lmis: serialize(&lmis) }),
        }
    }
    Ok(rep)
}

/// Closed-form verdict and search verdict for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComparison {
    pub index: usize,
    /// `i₋([[A₁, B₁], [B₁*, 0]]) = r[A₁, B₁]`.
    pub criterion: bool,
    pub search: bool,
}

/// Pairs `(LMI₁, LMI₂)` with `LMI₂` feasible and `LMI₁` feasible about half
/// the time; compares the common-solution criterion with the search.
pub fn pair_criterion_agreement(dims: ConjectureDims, n_instances: usize, seed: u64) -> Result<Vec<PairComparison>> {
    (0..n_instances as u64)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i);
            let mut g = GridSampler::new(s);
            let second = draw_feasible_lmi(&mut g, dims)?;
            let first = if g.coin(0.5) {
                draw_feasible_lmi(&mut g, dims)?
            } else {
                let m = g.usize(1, dims.m);
                LmiProblem::new(g.structured_herm(m), g.structured(m, dims.n), Relation::Geq)?
            };
            let cp = ConstrainedProblem::new(first.a.clone(), first.b.clone(), second.a.clone(), second.b.clone(), Relation::Geq)?;
            let criterion = inr(&cp.block_m1()).minus == r_h(first.a.as_mat(), &first.b);
            let search = common_solution_search(&[first, second], s).is_some();
            Ok(PairComparison { index: i as usize, criterion, search })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_lmi_has_common_solution() {
        let mut g = GridSampler::new(4);
        let p = draw_feasible_lmi(&mut g, ConjectureDims { m: 3, n: 3 }).unwrap();
        let hit = common_solution_search(&[p.clone(), p.clone(), p], 0).unwrap();
        assert!(hit.stage.starts_with("xhat"));
    }

    #[test]
    fn pair_search_matches_criterion() {
        let rows = pair_criterion_agreement(ConjectureDims { m: 3, n: 3 }, 100, 11).unwrap();
        assert!(rows.iter().all(|r| r.criterion == r.search), "{:?}", rows.iter().filter(|r| r.criterion != r.search).collect::<Vec<_>>());
        assert!(rows.iter().any(|r| !r.criterion));
        assert!(rows.iter().any(|r| r.criterion));
    }

    #[test]
    fn triple_search_is_deterministic() {
        let d = ConjectureDims { m: 3, n: 3 };
        let a = conjecture35_search(d, 3, 50, 9).unwrap();
        let b = conjecture35_search(d, 3, 50, 9).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.candidates.is_empty());
        assert!(conjecture35_search(d, 1, 1, 0).is_err());
    }
}
