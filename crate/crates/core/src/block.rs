//! Rank and inertia expansions of block matrices.
//!
//! Each evaluator computes the closed form and the direct value and returns
//! [`RiaError::IdentityFailure`] if they ever differ. The closed form is the
//! value handed back.

use serde::Serialize;

use crate::error::{Result, RiaError};
use crate::matrix::{Mat, QHerm, QMat};
use crate::spectral::{ef, inr, inverse_q, pinv_q, r, r_h, r_v, within, Inertia};

pub(crate) fn ensure(ok: bool, identity: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(RiaError::identity(identity, detail()))
    }
}

fn check_square(name: &str, m: &QMat) -> Result<()> {
    if !m.is_square() {
        return Err(RiaError::DimensionMismatch(format!("{name} must be square, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

pub(crate) fn diff(a: usize, b: usize, identity: &str) -> Result<usize> {
    a.checked_sub(b).ok_or_else(|| RiaError::identity(identity, format!("negative count {a} - {b}")))
}

fn inertia_from_parts(plus: usize, minus: usize, order: usize) -> Result<Inertia> {
    if plus + minus > order {
        return Err(RiaError::identity("inertia bounds", format!("{plus}+{minus} exceeds order {order}")));
    }
    Ok(Inertia::new(plus, minus, order - plus - minus))
}

/// `[[A, B], [B*, 0]]`.
pub fn bordered(a: &QMat, b: &QMat) -> Result<QMat> {
    let bs = b.adjoint();
    let z = QMat::zeros(b.cols(), b.cols());
    Mat::block(&[vec![a, b], vec![&bs, &z]])
}

/// `[[A, B], [B*, D]]`.
pub fn two_by_two(a: &QMat, b: &QMat, d: &QMat) -> Result<QMat> {
    let bs = b.adjoint();
    Mat::block(&[vec![a, b], vec![&bs, d]])
}

/// A Hermitian `A` with a border `B`.
#[derive(Debug, Clone)]
pub struct BorderedPair {
    pub a: QHerm,
    pub b: QMat,
}

impl BorderedPair {
    pub fn new(a: QHerm, b: QMat) -> Result<Self> {
        if a.order() != b.rows() {
            return Err(RiaError::DimensionMismatch(format!(
                "A is {0}x{0} but B has {1} rows",
                a.order(),
                b.rows()
            )));
        }
        Ok(BorderedPair { a, b })
    }

    pub fn m1(&self) -> QMat {
        bordered(&self.a, &self.b).expect("conformable by construction")
    }

    /// `E_B A E_B`.
    pub fn eae(&self) -> QMat {
        let (e, _) = ef(&self.b);
        &(&e * &self.a) * &e
    }
}

/// `r[A, B]` and `r[A; C]` from the rank expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankExpansion {
    pub rank_row_block: usize,
    pub rank_col_block: usize,
}

/// `r[A, B] = r(A) + r(E_A B) = r(B) + r(E_B A)` and
/// `r[A; C] = r(A) + r(C F_A) = r(C) + r(A F_C)`, each checked against direct elimination.
pub fn rank_expansion(a: &QMat, b: &QMat, c: &QMat) -> Result<RankExpansion> {
    if a.rows() != b.rows() || a.cols() != c.cols() {
        return Err(RiaError::DimensionMismatch(format!(
            "A {}x{}, B {}x{}, C {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let (ea, fa) = ef(a);
    let (eb, _) = ef(b);
    let (_, fc) = ef(c);
    let ra = r(a);
    let row = ra + r(&(&ea * b));
    let row2 = r(b) + r(&(&eb * a));
    let col = ra + r(&(c * &fa));
    let col2 = r(c) + r(&(a * &fc));
    let direct_row = r_h(a, b);
    let direct_col = r_v(a, c);
    ensure(row == direct_row && row2 == direct_row, "r[A,B] expansion", || {
        format!("r(A)+r(E_A B)={row}, r(B)+r(E_B A)={row2}, direct={direct_row}")
    })?;
    ensure(col == direct_col && col2 == direct_col, "r[A;C] expansion", || {
        format!("r(A)+r(C F_A)={col}, r(C)+r(A F_C)={col2}, direct={direct_col}")
    })?;
    Ok(RankExpansion { rank_row_block: row, rank_col_block: col })
}

/// `i±(M₁) = r(B) + i±(E_B A E_B)`, plus the sign special cases when `A` is semidefinite.
pub fn bordered_inertia(p: &BorderedPair) -> Result<Inertia> {
    let rb = r(&p.b);
    let ie = inr(&p.eae());
    let order = p.a.order() + p.b.cols();
    let closed = inertia_from_parts(rb + ie.plus, rb + ie.minus, order)?;
    let direct = inr(&p.m1());
    ensure(closed == direct, "bordered inertia", || format!("closed {closed}, direct {direct}"))?;
    let ia = inr(&p.a);
    let rab = r_h(&p.a, &p.b);
    if ia.minus == 0 {
        ensure(closed.plus == rab && closed.minus == rb, "bordered inertia, A PSD", || {
            format!("i(M1)={closed}, r[A,B]={rab}, r(B)={rb}")
        })?;
    }
    if ia.plus == 0 {
        ensure(closed.plus == rb && closed.minus == rab, "bordered inertia, A NSD", || {
            format!("i(M1)={closed}, r[A,B]={rab}, r(B)={rb}")
        })?;
    }
    Ok(closed)
}

/// Inertia of `M₂ = [[A, B], [B*, D]]` from
/// `i±(M₂) = i±(A) + i±[[0, E_A B], [B* E_A, D − B*A†B]]`.
///
/// When `R(B) ⊆ R(A)` the reduced form `i±(A) + i±(D − B*A†B)` is also checked,
/// and the lower bounds `i±(M₂) ≥ i±(A) + i±(D − B*A†B) ≥ i±(A)` always are.
pub fn schur_inertia(a: &QHerm, b: &QMat, d: &QHerm) -> Result<Inertia> {
    let m2 = two_by_two(a, b, d)?;
    let ap = pinv_q(a);
    let (ea, _) = ef(a);
    let s = d.as_mat() - &(&(&b.adjoint() * &ap) * b);
    let eab = &ea * b;
    let zero = QMat::zeros(a.order(), a.order());
    let inner = two_by_two(&zero, &eab, &s)?;
    let ia = inr(a);
    let ii = inr(&inner);
    let closed = inertia_from_parts(ia.plus + ii.plus, ia.minus + ii.minus, m2.rows())?;
    let direct = inr(&m2);
    ensure(closed == direct, "block inertia expansion", || format!("closed {closed}, direct {direct}"))?;
    let is = inr(&s);
    ensure(
        direct.plus >= ia.plus + is.plus && direct.minus >= ia.minus + is.minus,
        "block inertia lower bound",
        || format!("i(M2)={direct}, i(A)={ia}, i(S)={is}"),
    )?;
    if within(b, a) {
        ensure(direct.plus == ia.plus + is.plus && direct.minus == ia.minus + is.minus, "block inertia, R(B) in R(A)", || {
            format!("i(M2)={direct}, i(A)+i(S)={}", ia + is)
        })?;
    }
    Ok(closed)
}

/// `i±(D − B*A†B) = i±[[A³, AB], [B*A, D]] − i±(A)`; with `R(B) ⊆ R(A)` also
/// `i±[[A, B], [B*, D]] − i±(A)`.
pub fn schur_complement_inertia(a: &QHerm, b: &QMat, d: &QHerm) -> Result<Inertia> {
    if a.order() != b.rows() || d.order() != b.cols() {
        return Err(RiaError::DimensionMismatch("A, B, D not conformable".into()));
    }
    let a3 = &(a.as_mat() * a.as_mat()) * a.as_mat();
    let ab = a.as_mat() * b;
    let big = two_by_two(&a3, &ab, d)?;
    let ib = inr(&big);
    let ia = inr(a);
    let closed = inertia_from_parts(
        diff(ib.plus, ia.plus, "Schur complement inertia")?,
        diff(ib.minus, ia.minus, "Schur complement inertia")?,
        d.order(),
    )?;
    let s = d.as_mat() - &(&(&b.adjoint() * &pinv_q(a)) * b);
    let direct = inr(&s);
    ensure(closed == direct, "generalized Schur complement inertia", || format!("closed {closed}, direct {direct}"))?;
    if within(b, a) {
        let i2 = inr(&two_by_two(a, b, d)?);
        ensure(
            i2.plus == ia.plus + direct.plus && i2.minus == ia.minus + direct.minus,
            "Schur complement inertia, R(B) in R(A)",
            || format!("i(M2)={i2}, i(A)={ia}, direct {direct}"),
        )?;
    }
    Ok(closed)
}

/// Result of the explicit block formula for `pinv(M₁)`.
#[derive(Debug, Clone, PartialEq)]
pub enum BorderedPinv {
    Formula(QMat),
    /// `r(M₁) ≠ r[A, B] + r(B)`; the block formula does not give the pseudoinverse.
    NotApplicable,
}

/// Explicit `M₁†` in terms of `B†`, `E_B` and `(E_B A E_B)†`, valid exactly
/// when `r(M₁) = r[A, B] + r(B)` (equivalently `r(E_B A E_B) = r(E_B A)`).
pub fn bordered_pinv(p: &BorderedPair) -> Result<BorderedPinv> {
    let a = p.a.as_mat();
    let b = &p.b;
    let m1 = p.m1();
    let rb = r(b);
    let applicable = r(&m1) == r_h(a, b) + rb;
    let (e, _) = ef(b);
    let eae = &(&e * a) * &e;
    ensure(applicable == (r(&eae) == r(&(&e * a))), "bordered pinv applicability", || {
        "the two forms of the condition disagree".into()
    })?;
    if !applicable {
        return Ok(BorderedPinv::NotApplicable);
    }
    let bp = pinv_q(b);
    let bps = bp.adjoint();
    let g = pinv_q(&eae);
    let top_left = g.clone();
    let top_right = &bps - &(&(&(&g * &e) * a) * &bps);
    let bottom_left = &bp - &(&(&(&bp * a) * &e) * &g);
    let bottom_right = &(&(&(&(&(&bp * a) * &e) * &g) * &e) * &(a * &bps)) - &(&(&bp * a) * &bps);
    let formula = Mat::block(&[vec![&top_left, &top_right], vec![&bottom_left, &bottom_right]])?;
    let direct = pinv_q(&m1);
    ensure(formula == direct, "bordered pseudoinverse", || format!("formula {formula:?} vs {direct:?}"))?;
    Ok(BorderedPinv::Formula(formula))
}

/// `i±[[A, B F_P], [F_P B*, 0]] = i±[[A, B, 0], [B*, 0, P*], [0, P, 0]] − r(P)`.
pub fn projected_border_inertia(a: &QHerm, b: &QMat, p: &QMat) -> Result<Inertia> {
    if a.order() != b.rows() || p.cols() != b.cols() {
        return Err(RiaError::DimensionMismatch("A, B, P not conformable".into()));
    }
    let (m, n, k) = (a.order(), b.cols(), p.rows());
    let mut big = QMat::zeros(m + n + k, m + n + k);
    big.set_block(0, 0, a);
    big.set_block(0, m, b);
    big.set_block(m, 0, &b.adjoint());
    big.set_block(m, m + n, &p.adjoint());
    big.set_block(m + n, m, p);
    let ib = inr(&big);
    let rp = r(p);
    let closed = inertia_from_parts(
        diff(ib.plus, rp, "projected border inertia")?,
        diff(ib.minus, rp, "projected border inertia")?,
        m + n,
    )?;
    let (_, fp) = ef(p);
    let direct = inr(&bordered(a, &(b * &fp))?);
    ensure(closed == direct, "projected border inertia", || format!("closed {closed}, direct {direct}"))?;
    Ok(closed)
}

/// A predicate evaluated from its closed-form criterion and directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateCheck {
    pub name: String,
    pub closed_form: bool,
    pub direct: bool,
}

impl PredicateCheck {
    pub fn new(name: impl Into<String>, closed_form: bool, direct: bool) -> Self {
        PredicateCheck { name: name.into(), closed_form, direct }
    }
    pub fn agrees(&self) -> bool {
        self.closed_form == self.direct
    }
}

/// The equivalences attached to `M₁ = [[A, B], [B*, 0]]` and
/// `M₂ = [[A, B], [B*, D]]`, each side evaluated independently.
pub fn block_predicates(a: &QHerm, b: &QMat, d: &QHerm) -> Result<Vec<PredicateCheck>> {
    check_square("D", d)?;
    let m = a.order();
    let p = BorderedPair::new(a.clone(), b.clone())?;
    let im1 = inr(&p.m1());
    let eae = p.eae();
    let ie = inr(&eae);
    let (e, _) = ef(b);
    let re = r(&e);
    let mut out = vec![
        PredicateCheck::new("i+(M1)=m", ie.minus == 0 && ie.rank() == re, im1.plus == m),
        PredicateCheck::new("i-(M1)=m", ie.plus == 0 && ie.rank() == re, im1.minus == m),
    ];

    let m2 = two_by_two(a, b, d)?;
    let im2 = inr(&m2);
    let ia = inr(a);
    let id = inr(d);
    let s = d.as_mat() - &(&(&b.adjoint() * &pinv_q(a)) * b);
    let is = inr(&s);
    let bs = b.adjoint();
    let t = a.as_mat() - &(&(b * &pinv_q(d)) * &bs);
    let it = inr(&t);
    let b_in_a = within(b, a);
    out.push(PredicateCheck::new("i+(M2)=i+(A)", b_in_a && is.plus == 0, im2.plus == ia.plus));
    out.push(PredicateCheck::new("i-(M2)=i-(A)", b_in_a && is.minus == 0, im2.minus == ia.minus));
    let psd = im2.minus == 0;
    out.push(PredicateCheck::new("M2 psd via A", ia.minus == 0 && b_in_a && is.minus == 0, psd));
    out.push(PredicateCheck::new("M2 psd via D", id.minus == 0 && within(&bs, d) && it.minus == 0, psd));
    let pd = im2.minus == 0 && im2.zero == 0;
    let via_a = match inverse_q(a) {
        Some(ai) if ia.minus == 0 => inr(&(d.as_mat() - &(&(&bs * &ai) * b))).plus == d.order(),
        _ => false,
    };
    let via_d = match inverse_q(d) {
        Some(di) if id.minus == 0 => inr(&(a.as_mat() - &(&(b * &di) * &bs))).plus == m,
        _ => false,
    };
    out.push(PredicateCheck::new("M2 pd via A", via_a, pd));
    out.push(PredicateCheck::new("M2 pd via D", via_d, pd));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::GridSampler;
    use crate::spectral::inr;
    use crate::testutil::*;
    use crate::Qi;
    use proptest::prelude::*;

    fn pair(a: &[i64], b: &[&[i64]]) -> BorderedPair {
        BorderedPair::new(QHerm::int_diag(a), QMat::ints(b)).unwrap()
    }

    #[test]
    fn rank_expansion_examples() {
        let i2 = QMat::identity(2);
        let z = QMat::zeros(2, 1);
        assert_eq!(rank_expansion(&i2, &z, &QMat::zeros(1, 2)).unwrap().rank_row_block, 2);
        let a = QMat::int_diag(&[1, -1]);
        let b = QMat::ints(&[&[1], &[0]]);
        assert_eq!(rank_expansion(&a, &b, &QMat::zeros(1, 2)).unwrap().rank_row_block, 2);
    }

    #[test]
    fn bordered_examples() {
        assert_eq!(bordered_inertia(&pair(&[0, 0], &[&[1], &[0]])).unwrap(), Inertia::new(1, 1, 1));
        assert_eq!(bordered_inertia(&pair(&[1, -1], &[&[1], &[0]])).unwrap(), Inertia::new(1, 2, 0));
        let i = bordered_inertia(&pair(&[1, 1], &[&[1], &[0]])).unwrap();
        assert_eq!((i.plus, i.minus), (2, 1));
    }

    #[test]
    fn schur_examples() {
        let a = QHerm::identity(2);
        let d = QHerm::identity(3).neg();
        assert_eq!(schur_inertia(&a, &QMat::zeros(2, 3), &d).unwrap(), Inertia::new(2, 3, 0));
        let one = QHerm::int_diag(&[1]);
        assert_eq!(schur_inertia(&one, &QMat::ints(&[&[1]]), &QHerm::int_diag(&[0])).unwrap(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn schur_complement_examples() {
        let b = QMat::ints(&[&[1, 2], &[0, 1]]);
        let d = QHerm::int_diag(&[3, 3]);
        let direct = inr(&(d.as_mat() - &(&b.adjoint() * &b)));
        assert_eq!(schur_complement_inertia(&QHerm::identity(2), &b, &d).unwrap(), direct);
        let a = QHerm::int_diag(&[1, 0]);
        let i = schur_complement_inertia(&a, &QMat::ints(&[&[1], &[0]]), &QHerm::int_diag(&[0])).unwrap();
        assert_eq!(i, Inertia::new(0, 1, 0));
    }

    #[test]
    fn bordered_pinv_examples() {
        let p = BorderedPair::new(QHerm::zeros(2), QMat::ints(&[&[1], &[1]])).unwrap();
        let BorderedPinv::Formula(f) = bordered_pinv(&p).unwrap() else { panic!("applicable") };
        let bp = pinv_q(&p.b);
        let expect = Mat::block(&[vec![&QMat::zeros(2, 2), &bp.adjoint()], vec![&bp, &QMat::zeros(1, 1)]]).unwrap();
        assert_eq!(f, expect);
        let e1 = pair(&[1, -1], &[&[1], &[0]]);
        assert!(matches!(bordered_pinv(&e1).unwrap(), BorderedPinv::Formula(_)));
        let small = pair(&[1], &[&[0]]);
        assert_eq!(bordered_pinv(&small).unwrap(), BorderedPinv::Formula(QMat::ints(&[&[1, 0], &[0, 0]])));
        // E_B A E_B = 0 while E_B A ≠ 0.
        let na = BorderedPair::new(QHerm::ints(&[&[0, 1], &[1, 0]]), QMat::ints(&[&[1], &[0]])).unwrap();
        assert_eq!(bordered_pinv(&na).unwrap(), BorderedPinv::NotApplicable);
    }

    #[test]
    fn projected_border_examples() {
        let a = QHerm::int_diag(&[1, -1]);
        let b = QMat::ints(&[&[1, 0], &[0, 1]]);
        let i = projected_border_inertia(&a, &b, &QMat::identity(2)).unwrap();
        assert_eq!(i, Inertia::new(1, 1, 2));
        let i0 = projected_border_inertia(&a, &b, &QMat::zeros(1, 2)).unwrap();
        assert_eq!(i0, bordered_inertia(&BorderedPair::new(a, b).unwrap()).unwrap());
    }

    #[test]
    fn predicates_on_identity() {
        let a = QHerm::identity(2);
        let d = QHerm::identity(1);
        let b = QMat::zeros(2, 1);
        for p in block_predicates(&a, &b, &d).unwrap() {
            assert!(p.agrees(), "{p:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn identities_hold(s in any::<u64>()) {
            let mut g = GridSampler::new(s);
            let m = g.usize(1, 4);
            let n = g.usize(1, 3);
            let a = g.structured_herm(m);
            let b = g.structured(m, n);
            let l = g.usize(1, 3);
            let c = g.structured(l, m);
            let d = g.structured_herm(n);
            let k = g.usize(1, 3);
            let p = g.structured(k, n);
            rank_expansion(&a, &b, &c).unwrap();
            let bp = BorderedPair::new(a.clone(), b.clone()).unwrap();
            bordered_inertia(&bp).unwrap();
            schur_inertia(&a, &b, &d).unwrap();
            schur_complement_inertia(&a, &b, &d).unwrap();
            bordered_pinv(&bp).unwrap();
            projected_border_inertia(&a, &b, &p).unwrap();
            for c in block_predicates(&a, &b, &d).unwrap() {
                prop_assert!(c.agrees(), "{:?}", c);
            }
        }

        #[test]
        fn psd_border(a in arb_herm(3), b in arb_structured(3, 2)) {
            // Forcing A ⪰ 0 exercises the sign special cases.
            let psd = QHerm::from_construction(a.as_mat() * a.as_mat());
            bordered_inertia(&BorderedPair::new(psd.clone(), b.clone()).unwrap()).unwrap();
            bordered_inertia(&BorderedPair::new(psd.neg(), b).unwrap()).unwrap();
        }
    }

    #[test]
    fn complex_entries() {
        let a = QHerm::from_construction(QMat::from_rows(vec![
            vec![Qi::int(1, 0), Qi::int(0, 1)],
            vec![Qi::int(0, -1), Qi::int(0, 0)],
        ]));
        let b = QMat::from_rows(vec![vec![Qi::int(1, 1)], vec![Qi::int(0, 0)]]);
        bordered_inertia(&BorderedPair::new(a.clone(), b.clone()).unwrap()).unwrap();
        bordered_pinv(&BorderedPair::new(a, b).unwrap()).unwrap();
    }
}
