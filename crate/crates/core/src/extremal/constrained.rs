//! Extremes of `A₁ − B₁XB₁*` over the Hermitian solutions of
//! `B₂XB₂* = A₂`, `B₂XB₂* ⪰ A₂` or `B₂XB₂* ⪯ A₂`.

use super::{check, same_values, z, ConstrainedProblem, ExtremalReport, PredicateCheck};
use crate::error::{Result, RiaError};
use crate::lmi::Relation;
use crate::matrix::Mat;
use crate::spectral::{inr, r, r_h, within, Inertia};

struct Parts {
    rab1: i64,
    rab2: i64,
    m: Inertia,
    m1: Inertia,
    rn: i64,
    rb1: i64,
    rb2: i64,
    rb12: i64,
    m1_order: i64,
    a1_in_b1: bool,
    a2_in_b2: bool,
}

impl Parts {
    fn of(p: &ConstrainedProblem) -> Result<Self> {
        Ok(Parts {
            rab1: z(r_h(&p.a1, &p.b1)),
            rab2: z(r_h(&p.a2, &p.b2)),
            m: inr(&p.block_m()),
            m1: inr(&p.block_m1()),
            rn: z(r(&p.block_n())),
            rb1: z(r(&p.b1)),
            rb2: z(r(&p.b2)),
            rb12: z(r(&Mat::vstack(&[&p.b1, &p.b2])?)),
            m1_order: z(p.m1()),
            a1_in_b1: within(&p.a1, &p.b1),
            a2_in_b2: within(&p.a2, &p.b2),
        })
    }

    fn mp(&self) -> i64 {
        z(self.m.plus)
    }

    fn mm(&self) -> i64 {
        z(self.m.minus)
    }

    fn table(&self) -> Vec<(&'static str, i64)> {
        vec![
            ("r[A1,B1]", self.rab1),
            ("r[A2,B2]", self.rab2),
            ("i+(M)", self.mp()),
            ("i-(M)", self.mm()),
            ("r(M)", z(self.m.rank())),
            ("i+(M1)", z(self.m1.plus)),
            ("i-(M1)", z(self.m1.minus)),
            ("r(N)", self.rn),
            ("r(B1)", self.rb1),
            ("r(B2)", self.rb2),
            ("r[B1;B2]", self.rb12),
            ("m1", self.m1_order),
        ]
    }
}

/// Extremes over the Hermitian solutions of `B₂XB₂* = A₂`.
pub fn equality_constrained_extremal(p: &ConstrainedProblem) -> Result<ExtremalReport> {
    if p.rel != Relation::Eq {
        return Err(RiaError::UnsupportedRelation(format!("expected an equality constraint, got {}", p.rel)));
    }
    p.require_feasible()?;
    let q = Parts::of(p)?;
    let (rab, rm, rn, rb2, m1) = (q.rab1, z(q.m.rank()), q.rn, q.rb2, q.m1_order);
    let rep = ExtremalReport::build(
        "equality-constrained",
        p.m1(),
        [
            rab.min(rm - 2 * rb2),
            2 * rab - 2 * rn + rm,
            q.mp() - rb2,
            rab - rn + q.mp(),
            q.mm() - rb2,
            rab - rn + q.mm(),
        ],
        q.table(),
    )?;
    let d = rep.dictionary();
    let preds = vec![
        check("A1 - B1XB1* nonsingular for some X", rab == m1 && rm >= 2 * rb2 + m1, d.nonsingular_exists),
        check(
            "B1XB1* = A1 for some X",
            q.a1_in_b1 && q.a2_in_b2 && rm == 2 * q.rb12,
            d.zero_exists,
        ),
        check("B1XB1* < A1 for some X", q.mp() == rb2 + m1, d.pd_exists),
        check("B1XB1* > A1 for some X", q.mm() == rb2 + m1, d.nd_exists),
        check("B1XB1* <= A1 for some X", q.a2_in_b2 && q.mm() == rn - rab, d.psd_exists),
        check("B1XB1* >= A1 for some X", q.a2_in_b2 && q.mp() == rn - rab, d.nsd_exists),
    ];
    rep.with_predicates(preds)
}

/// Extremes over the Hermitian solutions of `B₂XB₂* ⪰ A₂` (or `⪯`), with the
/// existence and invariance battery, and the reduced forms checked when both
/// `B₁XB₁* = A₁` and `B₂XB₂* = A₂` are solvable.
pub fn inequality_constrained_extremal(p: &ConstrainedProblem) -> Result<ExtremalReport> {
    if !matches!(p.rel, Relation::Geq | Relation::Leq) {
        return Err(RiaError::UnsupportedRelation(format!("expected >= or <= constraint, got {}", p.rel)));
    }
    p.require_feasible()?;
    let q = Parts::of(p)?;
    let (rab, rn, m1) = (q.rab1, q.rn, q.m1_order);
    let (m1p, m1m) = (z(q.m1.plus), z(q.m1.minus));
    let geq = p.rel == Relation::Geq;
    let raw = if geq {
        [rab, 2 * rab + q.mm() - m1m - rn, q.mp() - q.rab2, rab - m1m, m1m, rab - rn + q.mm()]
    } else {
        [rab, 2 * rab + q.mp() - m1p - rn, m1p, rab - rn + q.mp(), q.mm() - q.rab2, rab - m1p]
    };
    let kind = if geq { "constrained (>=)" } else { "constrained (<=)" };
    let rep = ExtremalReport::build(kind, p.m1(), raw, q.table())?;
    if q.a1_in_b1 && q.a2_in_b2 {
        let reduced = if geq {
            [q.rb1, q.mm() - q.rb12, q.mp() - q.rb2, 0, q.rb1, q.mm() - q.rb12]
        } else {
            [q.rb1, q.mp() - q.rb12, q.rb1, q.mp() - q.rb12, q.mm() - q.rb2, 0]
        };
        let reduced = ExtremalReport::build("constrained (consistent pair)", p.m1(), reduced, vec![])?;
        same_values("consistent-pair reduction", &rep.values, &reduced.values)?;
    }
    let d = rep.dictionary();
    // `own` is the constraint-side inertia index, `other` the opposite one.
    let (own, other, mo) = if geq { (q.mm(), q.mp(), m1m) } else { (q.mp(), q.mm(), m1p) };
    let (strict_same, strict_other, weak_same, weak_other) = if geq {
        (d.pd_exists, d.nd_exists, d.psd_exists, d.nsd_exists)
    } else {
        (d.nd_exists, d.pd_exists, d.nsd_exists, d.psd_exists)
    };
    let sym = if geq { (">", "<", ">=", "<=") } else { ("<", ">", "<=", ">=") };
    let preds: Vec<PredicateCheck> = vec![
        check("A1 - B1XB1* nonsingular for some feasible X", rab == m1, d.nonsingular_exists),
        check("A1 - B1XB1* nonsingular for all feasible X", rab == m1 && own == mo + rn - m1, d.all_nonsingular),
        check("B1XB1* = A1 for some feasible X", q.a1_in_b1 && own == q.rb12, d.zero_exists),
        check(&format!("B1XB1* {} A1 for some feasible X", sym.1), other == q.rab2 + m1, strict_same),
        check(&format!("B1XB1* {} A1 for some feasible X", sym.0), mo == m1, strict_other),
        check(&format!("B1XB1* {} A1 for some feasible X", sym.3), own == rn - rab, weak_same),
        check(&format!("B1XB1* {} A1 for some feasible X", sym.2), mo == rab, weak_other),
        check(
            &format!("every feasible X has B1XB1* {} A1", sym.2),
            other == q.rab2,
            if geq { d.all_nsd } else { d.all_psd },
        ),
        check("rank of A1 - B1XB1* invariant", own == mo + rn - rab, d.rank_invariant),
        check(
            "i+ of A1 - B1XB1* invariant",
            if geq { q.mp() + m1m == rab + q.rab2 } else { m1p + rn == rab + q.mp() },
            d.iplus_invariant,
        ),
        check(
            "i- of A1 - B1XB1* invariant",
            if geq { m1m + rn == rab + q.mm() } else { q.mm() + m1p == rab + q.rab2 },
            d.iminus_invariant,
        ),
    ];
    rep.with_predicates(preds)
}

/// Dispatch on the constraint relation.
pub fn constrained_extremal(p: &ConstrainedProblem) -> Result<ExtremalReport> {
    match p.rel {
        Relation::Eq => equality_constrained_extremal(p),
        Relation::Geq | Relation::Leq => inequality_constrained_extremal(p),
        r => Err(RiaError::UnsupportedRelation(format!("no extremal formulas under a strict constraint ({r})"))),
    }
}

/// Predicate battery, each evaluated from its closed-form criterion and from
/// the extremal values; any disagreement is an identity failure.
pub fn analyze_constrained(p: &ConstrainedProblem) -> Result<Vec<PredicateCheck>> {
    Ok(constrained_extremal(p)?.predicates)
}
