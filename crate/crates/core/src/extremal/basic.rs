//! Unconstrained extremes of `A − BXB*`, `A − BXC − (BXC)*` and `A ± BXX*B*`.

use serde::{Deserialize, Serialize};

use super::{check, same_values, z, ExtremalReport};
use crate::block::bordered;
use crate::error::{Result, RiaError};
use crate::lmi::{lmi_feasible, LmiProblem, Relation};
use crate::matrix::{Mat, QHerm, QMat};
use crate::spectral::{inr, r, r_h, within};

/// Extremes of `A − BXB*` over all Hermitian `X`.
pub fn unconstrained_extremal(a: &QHerm, b: &QMat) -> Result<ExtremalReport> {
    let m1 = bordered(a.as_mat(), b)?;
    let im = inr(&m1);
    let rab = z(r_h(a, b));
    let (p, q) = (z(im.plus), z(im.minus));
    let rep = ExtremalReport::build(
        "unconstrained",
        a.order(),
        [rab, 2 * rab - p - q, p, rab - q, q, rab - p],
        vec![("r[A,B]", rab), ("i+(M1)", p), ("i-(M1)", q), ("r(M1)", p + q)],
    )?;
    // Solvability of each LMI is decided independently by its certificate.
    let d = rep.dictionary();
    let feasible = |rel| -> Result<bool> { Ok(lmi_feasible(&LmiProblem::new(a.clone(), b.clone(), rel)?)?.feasible) };
    let preds = vec![
        check("BXB* >= A solvable", feasible(Relation::Geq)?, d.nsd_exists),
        check("BXB* > A solvable", feasible(Relation::Gt)?, d.nd_exists),
        check("BXB* <= A solvable", feasible(Relation::Leq)?, d.psd_exists),
        check("BXB* < A solvable", feasible(Relation::Lt)?, d.pd_exists),
    ];
    rep.with_predicates(preds)
}

/// Extremes of `A − BXC − (BXC)*` over all `X` (`n × p`), with `B` `m × n`
/// and `C` `p × m`. The range-inclusion and `C = I` reductions are checked
/// against the general expressions whenever they apply.
pub fn congruence_extremal(a: &QHerm, b: &QMat, c: &QMat) -> Result<ExtremalReport> {
    let m = a.order();
    if b.rows() != m || c.cols() != m {
        return Err(RiaError::DimensionMismatch(format!("need B with {m} rows and C with {m} columns")));
    }
    let (n, p) = (b.cols(), c.rows());
    let am = a.as_mat();
    let cs = c.adjoint();
    let abc = Mat::hstack(&[am, b, &cs])?;
    let rabc = z(r(&abc));
    let mb = inr(&bordered(am, b)?);
    let mc = inr(&bordered(am, &cs)?);
    let (zbn, zbp, zcn, zcp) = (QMat::zeros(n, n), QMat::zeros(n, p), QMat::zeros(p, n), QMat::zeros(p, p));
    let ba = b.adjoint();
    let row_b = z(r(&Mat::block(&[vec![am, b, &cs], vec![&ba, &zbn, &zbp]])?));
    let row_c = z(r(&Mat::block(&[vec![am, b, &cs], vec![c, &zcn, &zcp]])?));
    let (sp, sm) = (z(mb.plus) - row_b, z(mb.minus) - row_b);
    let (tp, tm) = (z(mc.plus) - row_c, z(mc.minus) - row_c);
    let raw = [
        rabc.min(z(mb.rank())).min(z(mc.rank())),
        2 * rabc + (sp + sm).max(tp + tm).max(sp + tm).max(sm + tp),
        z(mb.plus.min(mc.plus)),
        rabc + sp.max(tp),
        z(mb.minus.min(mc.minus)),
        rabc + sm.max(tm),
    ];
    let range_branch = within(b, &cs);
    let identity_branch = p == m && *c == QMat::identity(m);
    let rep = ExtremalReport::build(
        "congruence",
        m,
        raw,
        vec![
            ("r[A,B,C*]", rabc),
            ("i+(M_B)", z(mb.plus)),
            ("i-(M_B)", z(mb.minus)),
            ("i+(M_C)", z(mc.plus)),
            ("i-(M_C)", z(mc.minus)),
            ("s+", sp),
            ("s-", sm),
            ("t+", tp),
            ("t-", tm),
            ("R(B) in R(C*)", i64::from(range_branch)),
            ("C = I", i64::from(identity_branch)),
        ],
    )?;
    if range_branch {
        let rac = z(r_h(am, &cs));
        let zc = QMat::zeros(p, n);
        let rabc0 = z(r(&Mat::block(&[vec![am, b], vec![c, &zc]])?));
        let (bp, bm) = (z(mb.plus), z(mb.minus));
        let branch = ExtremalReport::build(
            "congruence (range inclusion)",
            m,
            [rac.min(bp + bm), 2 * rac + bp + bm - 2 * rabc0, bp, rac + bp - rabc0, bm, rac + bm - rabc0],
            vec![],
        )?;
        same_values("congruence range-inclusion reduction", &rep.values, &branch.values)?;
    }
    if identity_branch {
        let rb = z(r(b));
        let (bp, bm) = (z(mb.plus), z(mb.minus));
        let branch = ExtremalReport::build(
            "congruence (C = I)",
            m,
            [z(m).min(bp + bm), bp + bm - 2 * rb, bp, bp - rb, bm, bm - rb],
            vec![],
        )?;
        same_values("congruence C = I reduction", &rep.values, &branch.values)?;
    }
    Ok(rep)
}

/// Sign in `A ± BXX*B*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticSign {
    Plus,
    Minus,
}

fn quadratic_values(ia: (i64, i64), rab: i64, mp: i64, mm: i64, k: i64, sign: QuadraticSign) -> [i64; 6] {
    let (ap, am) = ia;
    let ra = ap + am;
    match sign {
        QuadraticSign::Plus => [
            rab.min(k + ra),
            (ra - k).max(ap + rab - mp),
            mp.min(k + ap),
            ap,
            am,
            (am - k).max(rab - mp),
        ],
        QuadraticSign::Minus => [
            rab.min(k + ra),
            (ra - k).max(am + rab - mm),
            ap,
            (ap - k).max(rab - mm),
            mm.min(k + am),
            am,
        ],
    }
}

/// Extremes of `A ± BXX*B*` over `X` of size `n × k`. The `k = n` closed
/// forms are checked against the general ones.
pub fn quadratic_extremal(a: &QHerm, b: &QMat, k: usize, sign: QuadraticSign) -> Result<ExtremalReport> {
    let mi = inr(&bordered(a.as_mat(), b)?);
    let ia = inr(a);
    let rab = z(r_h(a, b));
    let (ap, am, mp, mm) = (z(ia.plus), z(ia.minus), z(mi.plus), z(mi.minus));
    let raw = quadratic_values((ap, am), rab, mp, mm, z(k), sign);
    let rep = ExtremalReport::build(
        "quadratic",
        a.order(),
        raw,
        vec![("r[A,B]", rab), ("i+(A)", ap), ("i-(A)", am), ("i+(M)", mp), ("i-(M)", mm), ("k", z(k))],
    )?;
    let n = z(b.cols());
    let at_n = ExtremalReport::build("quadratic (general at k = n)", a.order(), quadratic_values((ap, am), rab, mp, mm, n, sign), vec![])?.values;
    let special = match sign {
        QuadraticSign::Plus => [rab, ap + rab - mp, mp, ap, am, rab - mp],
        QuadraticSign::Minus => [rab, am + rab - mm, ap, rab - mm, mm, am],
    };
    let special = ExtremalReport::build("quadratic (k = n)", a.order(), special, vec![])?;
    same_values("quadratic k = n reduction", &at_n, &special.values)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmi::ExtremalValues;
    use crate::sampling::GridSampler;
    use crate::spectral::Inertia;
    use crate::testutil::*;
    use crate::Qi;
    use proptest::prelude::*;

    fn e1() -> (QHerm, QMat) {
        (QHerm::int_diag(&[1, -1]), QMat::ints(&[&[1], &[0]]))
    }

    #[test]
    fn e1_unconstrained() {
        let (a, b) = e1();
        let rep = unconstrained_extremal(&a, &b).unwrap();
        assert_eq!(rep.values.as_array(), [2, 1, 1, 0, 2, 1]);
        // diag(1 - x, -1) over a scan of x.
        let mut seen = Vec::new();
        for x in -4..=4 {
            let i = inr(&QMat::int_diag(&[1 - x, -1]));
            assert!(rep.admits(&i));
            seen.push(i);
        }
        assert!(seen.contains(&Inertia::new(1, 1, 0)) && seen.contains(&Inertia::new(0, 2, 0)));
        assert!(seen.contains(&Inertia::new(0, 1, 1)));
    }

    #[test]
    fn unconstrained_trivial() {
        let a = QHerm::int_diag(&[2, -3, 0]);
        let rep = unconstrained_extremal(&a, &QMat::zeros(3, 2)).unwrap();
        assert_eq!(rep.values, ExtremalValues::point(&Inertia::new(1, 1, 1)));
        let rep = unconstrained_extremal(&a, &QMat::identity(3)).unwrap();
        assert_eq!((rep.values.max_rank, rep.values.min_rank), (3, 0));
    }

    #[test]
    fn congruence_examples() {
        let rep = congruence_extremal(&QHerm::zeros(2), &QMat::ints(&[&[1], &[0]]), &QMat::ints(&[&[0, 1]])).unwrap();
        assert_eq!((rep.values.max_rank, rep.values.min_rank), (2, 0));
        assert_eq!(rep.ingredients["s+"], -2);
        assert_eq!(rep.ingredients["t-"], -2);
        let a = QHerm::int_diag(&[1, -1, 0]);
        let rep = congruence_extremal(&a, &QMat::zeros(3, 2), &QMat::ints(&[&[1, 0, 1]])).unwrap();
        assert_eq!(rep.values, ExtremalValues::point(&Inertia::new(1, 1, 1)));
    }

    #[test]
    fn quadratic_examples() {
        let (a, b) = e1();
        let rep = quadratic_extremal(&a, &b, 1, QuadraticSign::Plus).unwrap();
        assert_eq!(rep.values.as_array(), [2, 2, 1, 1, 1, 1]);
        let rep = quadratic_extremal(&a, &b, 0, QuadraticSign::Minus).unwrap();
        assert_eq!(rep.values, ExtremalValues::point(&Inertia::new(1, 1, 0)));
    }

    fn sample_congruence(a: &QHerm, b: &QMat, c: &QMat, g: &mut GridSampler) -> Inertia {
        let x = g.mat(b.cols(), c.rows());
        let bxc = &(b * &x) * c;
        inr(&(&(a.as_mat() - &bxc) - &bxc.adjoint()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn unconstrained_sound(s in any::<u64>()) {
            let mut g = GridSampler::new(s);
            let m = g.usize(1, 4);
            let n = g.usize(1, 3);
            let a = g.structured_herm(m);
            let b = g.structured(m, n);
            let rep = unconstrained_extremal(&a, &b).unwrap();
            let mut max_seen = 0;
            for _ in 0..60 {
                let x = g.herm(n);
                let i = inr(&(a.as_mat() - &x.congruence(&b).unwrap().into_mat()));
                prop_assert!(rep.admits(&i), "{:?} vs {:?}", i, rep.values);
                max_seen = max_seen.max(i.rank());
            }
            prop_assert_eq!(max_seen, rep.values.max_rank);
        }

        #[test]
        fn congruence_sound(s in any::<u64>()) {
            let mut g = GridSampler::new(s);
            let m = g.usize(1, 4);
            let n = g.usize(1, 3);
            let p = g.usize(1, 3);
            let a = g.structured_herm(m);
            let b = g.structured(m, n);
            let c = if g.coin(0.3) { QMat::identity(m) } else { g.structured(p, m) };
            let rep = congruence_extremal(&a, &b, &c).unwrap();
            let mut max_seen = 0;
            for _ in 0..60 {
                let i = sample_congruence(&a, &b, &c, &mut g);
                prop_assert!(rep.admits(&i), "{:?} vs {:?}", i, rep.values);
                max_seen = max_seen.max(i.rank());
            }
            prop_assert_eq!(max_seen, rep.values.max_rank);
        }

        #[test]
        fn identity_branch_agrees(a in arb_herm(3), b in arb_structured(3, 2)) {
            congruence_extremal(&a, &b, &QMat::identity(3)).unwrap();
        }

        #[test]
        fn quadratic_sound(s in any::<u64>()) {
            let mut g = GridSampler::new(s);
            let m = g.usize(1, 4);
            let n = g.usize(1, 3);
            let k = g.usize(0, 3);
            let a = g.structured_herm(m);
            let b = g.structured(m, n);
            let sign = if g.coin(0.5) { QuadraticSign::Plus } else { QuadraticSign::Minus };
            let rep = quadratic_extremal(&a, &b, k, sign).unwrap();
            let neg = quadratic_extremal(&a.neg(), &b, k, match sign { QuadraticSign::Plus => QuadraticSign::Minus, QuadraticSign::Minus => QuadraticSign::Plus }).unwrap();
            prop_assert_eq!(rep.values.swapped(), neg.values);
            let mut max_seen = 0;
            for _ in 0..60 {
                let x = g.mat(n, k);
                let bx = &b * &x;
                let q = &bx * &bx.adjoint();
                let v = match sign { QuadraticSign::Plus => a.as_mat() + &q, QuadraticSign::Minus => a.as_mat() - &q };
                let i = inr(&v);
                prop_assert!(rep.admits(&i), "{:?} vs {:?}", i, rep.values);
                max_seen = max_seen.max(i.rank());
            }
            prop_assert_eq!(max_seen, rep.values.max_rank);
        }
    }

    #[test]
    fn congruence_scan_two_by_two() {
        // A - BXC - (BXC)* = [[0, -x], [-conj x, 0]] has rank 0 or 2.
        let (a, b, c) = (QHerm::zeros(2), QMat::ints(&[&[1], &[0]]), QMat::ints(&[&[0, 1]]));
        let rep = congruence_extremal(&a, &b, &c).unwrap();
        for re in -2..=2 {
            let x = QMat::from_rows(vec![vec![Qi::int(re, 1 - re.abs().min(1))]]);
            let bxc = &(&b * &x) * &c;
            let i = inr(&(&-&bxc - &bxc.adjoint()));
            assert!(rep.admits(&i));
        }
    }
}
