//! Hermitian and positive semidefinite solutions of `AX = B` and `AXA* = B`
//! as explicit parametric families.

use serde::Serialize;

use crate::error::{Result, RiaError};
use crate::matrix::{Hermitian, QHerm, QMat};
use crate::sampling::GridSampler;
use crate::spectral::{ef, inr, pinv_q, r, within};

/// Which equation a family solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equation {
    /// `AX = B`.
    Left,
    /// `AXA* = B`.
    Congruence,
}

/// Shape of the free part added to the base.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyForm {
    /// `base + F U F` with `U` Hermitian.
    Sandwich,
    /// `base + F U U* F`.
    Gram,
    /// `base + F V + V* F`.
    Shift,
    /// `(A† + F V) B (A† + F V)* + F U U* F`.
    GInverseGram,
}

/// One free parameter of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamSlot {
    pub name: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub hermitian: bool,
}

/// Values for the free parameters. Unused slots stay `None`.
#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    pub u: Option<QMat>,
    pub v: Option<QMat>,
}

/// Every solution of a consistent equation, as `base` plus a projected free part.
#[derive(Debug, Clone)]
pub struct ParametricAffineFamily {
    pub equation: Equation,
    pub psd: bool,
    pub a: QMat,
    pub rhs: QMat,
    /// Value at all-zero parameters.
    pub base: QHerm,
    /// `F_A`.
    pub projector: QMat,
    pub form: FamilyForm,
    pinv_a: QMat,
}

impl ParametricAffineFamily {
    pub fn order(&self) -> usize {
        self.a.cols()
    }

    pub fn param_shapes(&self) -> Vec<ParamSlot> {
        let n = self.order();
        let m = self.a.rows();
        match self.form {
            FamilyForm::Sandwich => vec![ParamSlot { name: "U", rows: n, cols: n, hermitian: true }],
            FamilyForm::Gram => vec![ParamSlot { name: "U", rows: n, cols: n, hermitian: false }],
            FamilyForm::Shift => vec![ParamSlot { name: "V", rows: n, cols: n, hermitian: false }],
            FamilyForm::GInverseGram => vec![
                ParamSlot { name: "U", rows: n, cols: n, hermitian: false },
                ParamSlot { name: "V", rows: n, cols: m, hermitian: false },
            ],
        }
    }

    fn param<'a>(&self, slot: &ParamSlot, p: &'a Option<QMat>) -> Result<Option<&'a QMat>> {
        let Some(x) = p else { return Ok(None) };
        if x.shape() != (slot.rows, slot.cols) {
            return Err(RiaError::DimensionMismatch(format!(
                "{} must be {}x{}, got {}x{}",
                slot.name,
                slot.rows,
                slot.cols,
                x.rows(),
                x.cols()
            )));
        }
        if slot.hermitian && !x.is_hermitian_exact() {
            return Err(RiaError::ParameterRejected(format!("{} must be Hermitian", slot.name)));
        }
        Ok(Some(x))
    }

    /// Evaluate the family. Missing parameters are taken as zero.
    pub fn realize(&self, p: &FamilyParams) -> Result<QHerm> {
        let slots = self.param_shapes();
        let f = &self.projector;
        let x = match self.form {
            FamilyForm::Sandwich => match self.param(&slots[0], &p.u)? {
                Some(u) => self.base.as_mat() + &(&(f * u) * f),
                None => self.base.as_mat().clone(),
            },
            FamilyForm::Gram => match self.param(&slots[0], &p.u)? {
                Some(u) => {
                    let fu = f * u;
                    self.base.as_mat() + &(&fu * &fu.adjoint())
                }
                None => self.base.as_mat().clone(),
            },
            FamilyForm::Shift => match self.param(&slots[0], &p.v)? {
                Some(v) => {
                    let fv = f * v;
                    &(self.base.as_mat() + &fv) + &fv.adjoint()
                }
                None => self.base.as_mat().clone(),
            },
            FamilyForm::GInverseGram => {
                let u = self.param(&slots[0], &p.u)?;
                let v = self.param(&slots[1], &p.v)?;
                let g = match v {
                    Some(v) => &self.pinv_a + &(f * v),
                    None => self.pinv_a.clone(),
                };
                let mut x = &(&g * &self.rhs) * &g.adjoint();
                if let Some(u) = u {
                    let fu = f * u;
                    x = &x + &(&fu * &fu.adjoint());
                }
                x
            }
        };
        Ok(Hermitian::from_construction(x))
    }

    /// Draw grid parameters for every slot.
    pub fn sample_params(&self, g: &mut GridSampler) -> FamilyParams {
        let mut out = FamilyParams::default();
        for s in self.param_shapes() {
            let x = if s.hermitian { g.herm(s.rows).into_mat() } else { g.mat(s.rows, s.cols) };
            match s.name {
                "U" => out.u = Some(x),
                _ => out.v = Some(x),
            }
        }
        out
    }

    /// Does `x` solve the equation (and is it PSD when the family is)?
    pub fn check(&self, x: &QMat) -> bool {
        if !x.is_hermitian_exact() || x.rows() != self.order() {
            return false;
        }
        let lhs = match self.equation {
            Equation::Left => &self.a * x,
            Equation::Congruence => &(&self.a * x) * &self.a.adjoint(),
        };
        lhs == self.rhs && (!self.psd || inr(x).minus == 0)
    }
}

fn same_rows(a: &QMat, b: &QMat) -> Result<()> {
    if a.rows() != b.rows() {
        return Err(RiaError::DimensionMismatch(format!("A has {} rows, B has {}", a.rows(), b.rows())));
    }
    Ok(())
}

fn family(equation: Equation, psd: bool, a: &QMat, rhs: &QMat, base: QMat, form: FamilyForm) -> ParametricAffineFamily {
    let (_, f) = ef(a);
    ParametricAffineFamily {
        equation,
        psd,
        a: a.clone(),
        rhs: rhs.clone(),
        base: Hermitian::from_construction(base),
        projector: f,
        form,
        pinv_a: pinv_q(a),
    }
}

/// Hermitian solutions of `AX = B`: `X = A†B + (A†B)* − A†BA†A + F_A U F_A`.
pub fn solve_ax_b_hermitian(a: &QMat, b: &QMat) -> Result<ParametricAffineFamily> {
    same_rows(a, b)?;
    if b.cols() != a.cols() {
        return Err(RiaError::DimensionMismatch("AX = B with Hermitian X needs B of the same shape as A".into()));
    }
    if !within(b, a) {
        return Err(RiaError::Inconsistent("R(B) is not contained in R(A)".into()));
    }
    if a * &b.adjoint() != b * &a.adjoint() {
        return Err(RiaError::Inconsistent("AB* != BA*".into()));
    }
    let ap = pinv_q(a);
    let apb = &ap * b;
    let base = &(&apb + &apb.adjoint()) - &(&(&apb * &ap) * a);
    Ok(family(Equation::Left, false, a, b, base, FamilyForm::Sandwich))
}

/// PSD solutions of `AX = B`: `X = B*(AB*)†B + F_A U U* F_A`.
pub fn solve_ax_b_psd(a: &QMat, b: &QMat) -> Result<ParametricAffineFamily> {
    same_rows(a, b)?;
    if b.cols() != a.cols() {
        return Err(RiaError::DimensionMismatch("AX = B with Hermitian X needs B of the same shape as A".into()));
    }
    if !within(b, a) {
        return Err(RiaError::Inconsistent("R(B) is not contained in R(A)".into()));
    }
    let abs = a * &b.adjoint();
    if !abs.is_hermitian_exact() || inr(&abs).minus != 0 {
        return Err(RiaError::Inconsistent("AB* is not positive semidefinite".into()));
    }
    if r(&abs) != r(b) {
        return Err(RiaError::Inconsistent("r(AB*) != r(B)".into()));
    }
    let base = &(&b.adjoint() * &pinv_q(&abs)) * b;
    Ok(family(Equation::Left, true, a, b, base, FamilyForm::Gram))
}

/// Hermitian solutions of `AXA* = B`: `X = A†B(A†)* + F_A V + V* F_A`.
pub fn solve_axa_hermitian(a: &QMat, b: &QHerm) -> Result<ParametricAffineFamily> {
    same_rows(a, b)?;
    let ap = pinv_q(a);
    if &(a * &ap) * b.as_mat() != *b.as_mat() {
        return Err(RiaError::Inconsistent("AA†B != B".into()));
    }
    let base = &(&ap * b.as_mat()) * &ap.adjoint();
    Ok(family(Equation::Congruence, false, a, b, base, FamilyForm::Shift))
}

/// PSD solutions of `AXA* = B`: `X = (A† + F_A V) B (A† + F_A V)* + F_A U U* F_A`.
pub fn solve_axa_psd(a: &QMat, b: &QHerm) -> Result<ParametricAffineFamily> {
    same_rows(a, b)?;
    if inr(b).minus != 0 {
        return Err(RiaError::Inconsistent("B is not positive semidefinite".into()));
    }
    if !within(b, a) {
        return Err(RiaError::Inconsistent("R(B) is not contained in R(A)".into()));
    }
    let ap = pinv_q(a);
    let base = &(&ap * b.as_mat()) * &ap.adjoint();
    Ok(family(Equation::Congruence, true, a, b, base, FamilyForm::GInverseGram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::GridSampler;
    use crate::Qi;
    use proptest::prelude::*;

    fn draws(f: &ParametricAffineFamily, seed: u64, k: usize) {
        let mut g = GridSampler::new(seed);
        for _ in 0..k {
            let p = f.sample_params(&mut g);
            let x = f.realize(&p).unwrap();
            assert!(f.check(&x), "realization {x:?} fails its equation");
        }
        assert!(f.check(&f.base));
    }

    #[test]
    fn ax_b_hermitian_examples() {
        let b = QMat::ints(&[&[2, 1], &[1, 0]]);
        let f = solve_ax_b_hermitian(&QMat::identity(2), &b).unwrap();
        assert_eq!(f.base.as_mat(), &b);
        assert!(f.projector.is_zero());

        let d = QMat::int_diag(&[1, 0]);
        let f = solve_ax_b_hermitian(&d, &d).unwrap();
        let x = f.realize(&FamilyParams { u: Some(QMat::int_diag(&[9, 5])), v: None }).unwrap();
        assert_eq!(x.as_mat(), &QMat::int_diag(&[1, 5]));
        draws(&f, 1, 50);

        let err = solve_ax_b_hermitian(&d, &QMat::int_diag(&[0, 1])).unwrap_err();
        assert!(matches!(err, RiaError::Inconsistent(_)));
        let bad = solve_ax_b_hermitian(&QMat::identity(2), &QMat::ints(&[&[0, 1], &[0, 0]])).unwrap_err();
        assert!(matches!(bad, RiaError::Inconsistent(_)));
    }

    #[test]
    fn ax_b_psd_examples() {
        let a = QMat::ints(&[&[1, 2], &[0, 0]]);
        let f = solve_ax_b_psd(&a, &QMat::zeros(2, 2)).unwrap();
        assert!(f.base.is_zero());
        draws(&f, 2, 50);
        let f = solve_ax_b_psd(&QMat::identity(2), &QMat::identity(2)).unwrap();
        assert_eq!(f.base.as_mat(), &QMat::identity(2));
        let d = QMat::int_diag(&[1, 0]);
        let f = solve_ax_b_psd(&d, &d).unwrap();
        let x = f.realize(&FamilyParams { u: Some(QMat::from_rows(vec![vec![Qi::int(7, 0), Qi::int(0, 0)], vec![Qi::int(1, 1), Qi::int(0, 0)]])), v: None }).unwrap();
        assert_eq!(x.as_mat(), &QMat::int_diag(&[1, 2]));
        draws(&f, 3, 50);
        assert!(solve_ax_b_psd(&QMat::identity(1), &QMat::int_diag(&[-1])).is_err());
    }

    #[test]
    fn axa_hermitian_examples() {
        let b = QHerm::ints(&[&[1, 2], &[2, -1]]);
        let f = solve_axa_hermitian(&QMat::identity(2), &b).unwrap();
        assert_eq!(f.base, b);
        let a = QMat::ints(&[&[1, 0]]);
        let f = solve_axa_hermitian(&a, &QHerm::int_diag(&[2])).unwrap();
        assert_eq!(f.base.as_mat(), &QMat::int_diag(&[2, 0]));
        assert_eq!(f.projector, QMat::int_diag(&[0, 1]));
        draws(&f, 4, 50);
        assert!(solve_axa_hermitian(&QMat::zeros(1, 2), &QHerm::int_diag(&[1])).is_err());
    }

    #[test]
    fn axa_psd_examples() {
        let f = solve_axa_psd(&QMat::identity(2), &QHerm::identity(2)).unwrap();
        assert_eq!(f.base.as_mat(), &QMat::identity(2));
        let a = QMat::ints(&[&[1, 1]]);
        let f = solve_axa_psd(&a, &QHerm::zeros(1)).unwrap();
        assert!(f.base.is_zero());
        draws(&f, 5, 50);
        let f = solve_axa_psd(&QMat::ints(&[&[1, 0]]), &QHerm::int_diag(&[1])).unwrap();
        draws(&f, 6, 50);
        assert!(matches!(solve_axa_psd(&QMat::identity(1), &QHerm::int_diag(&[-1])), Err(RiaError::Inconsistent(_))));
        assert!(matches!(solve_axa_psd(&QMat::zeros(1, 1), &QHerm::int_diag(&[1])), Err(RiaError::Inconsistent(_))));
    }

    #[test]
    fn rejects_bad_params() {
        let f = solve_ax_b_hermitian(&QMat::int_diag(&[1, 0]), &QMat::int_diag(&[1, 0])).unwrap();
        let nh = QMat::ints(&[&[0, 1], &[0, 0]]);
        assert!(matches!(f.realize(&FamilyParams { u: Some(nh), v: None }), Err(RiaError::ParameterRejected(_))));
        assert!(f.realize(&FamilyParams { u: Some(QMat::zeros(3, 3)), v: None }).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// Right-hand sides built from a known solution are always consistent.
        #[test]
        fn constructed_instances(s in any::<u64>()) {
            let mut g = GridSampler::new(s);
            let m = g.usize(1, 3);
            let n = g.usize(1, 3);
            let a = g.structured(m, n);
            let x0 = g.structured_herm(n);
            let f = solve_ax_b_hermitian(&a, &(&a * &x0)).unwrap();
            draws(&f, s, 50);
            let f = solve_axa_hermitian(&a, &x0.congruence(&a).unwrap()).unwrap();
            draws(&f, s ^ 1, 50);
            let k = g.usize(0, n);
            let p = g.psd(n, k);
            let f = solve_ax_b_psd(&a, &(&a * &p)).unwrap();
            draws(&f, s ^ 2, 50);
            let f = solve_axa_psd(&a, &p.congruence(&a).unwrap()).unwrap();
            draws(&f, s ^ 3, 50);
        }
    }
}
