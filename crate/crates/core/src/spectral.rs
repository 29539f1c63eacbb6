//! Rank, inertia, Moore–Penrose inverse and the projectors `E_M`, `F_M`.
//!
//! The exact backend never looks at eigenvalues: rank comes from row
//! reduction and inertia from symmetric congruence with 1×1 and 2×2 pivots.
//! The float backend uses nalgebra's SVD and Hermitian eigensolver.

use std::fmt;
use std::ops::Add;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RiaError};
use crate::matrix::{FMat, Hermitian, Mat, QHerm, QMat};
use crate::scalar::{Qi, Scalar};

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Inertia {
    #[serde(rename = "iplus")]
    pub plus: usize,
    #[serde(rename = "iminus")]
    pub minus: usize,
    #[serde(rename = "izero")]
    pub zero: usize,
}

impl Inertia {
    pub fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Inertia { plus, minus, zero }
    }
    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }
    pub fn order(&self) -> usize {
        self.plus + self.minus + self.zero
    }
    /// Inertia of `−H`.
    pub fn swapped(&self) -> Self {
        Inertia { plus: self.minus, minus: self.plus, zero: self.zero }
    }
}

impl Add for Inertia {
    type Output = Inertia;
    fn add(self, o: Inertia) -> Inertia {
        Inertia { plus: self.plus + o.plus, minus: self.minus + o.minus, zero: self.zero + o.zero }
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.plus, self.minus, self.zero)
    }
}

/// Thresholds for the float backend. The exact backend ignores both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Singular values at or below `rank_rel_tol · max(m, n) · σ_max` count as zero.
    pub rank_rel_tol: f64,
    pub hermitian_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { rank_rel_tol: f64::EPSILON, hermitian_tol: 1e-10 }
    }
}

impl ToleranceConfig {
    pub fn with_rank_tol(rank_rel_tol: f64) -> Self {
        ToleranceConfig { rank_rel_tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rank_rel_tol > 0.0 && self.hermitian_tol > 0.0) {
            return Err(RiaError::Parse("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Backend-specific spectral kernels.
pub trait Spectral: Scalar {
    fn rank_of(m: &Mat<Self>, cfg: &ToleranceConfig) -> usize;
    fn inertia_of(h: &Hermitian<Self>, cfg: &ToleranceConfig) -> Inertia;
    fn pinv_of(m: &Mat<Self>, cfg: &ToleranceConfig) -> Mat<Self>;
}

pub fn rank<S: Spectral>(m: &Mat<S>, cfg: &ToleranceConfig) -> usize {
    S::rank_of(m, cfg)
}

pub fn inertia<S: Spectral>(h: &Hermitian<S>, cfg: &ToleranceConfig) -> Inertia {
    S::inertia_of(h, cfg)
}

pub fn pinv<S: Spectral>(m: &Mat<S>, cfg: &ToleranceConfig) -> Mat<S> {
    S::pinv_of(m, cfg)
}

/// `(E_M, F_M) = (I − MM†, I − M†M)`.
pub fn projectors<S: Spectral>(m: &Mat<S>, cfg: &ToleranceConfig) -> (Hermitian<S>, Hermitian<S>) {
    let p = pinv(m, cfg);
    let e = &Mat::identity(m.rows()) - &(m * &p);
    let f = &Mat::identity(m.cols()) - &(&p * m);
    (Hermitian::from_construction(e), Hermitian::from_construction(f))
}

/// `R(B) ⊆ R(A)`, decided by `r[A, B] = r(A)`.
pub fn range_included<S: Spectral>(b: &Mat<S>, a: &Mat<S>, cfg: &ToleranceConfig) -> Result<bool> {
    let ab = Mat::hstack(&[a, b])?;
    Ok(rank(&ab, cfg) == rank(a, cfg))
}

/// Löwner class of a Hermitian difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LoewnerClass {
    /// Positive definite.
    Pd,
    /// Positive semidefinite and singular.
    Psd,
    Nd,
    Nsd,
    Indefinite,
}

impl LoewnerClass {
    pub fn from_inertia(i: &Inertia) -> Self {
        if i.minus == 0 && i.zero == 0 {
            LoewnerClass::Pd
        } else if i.plus == 0 && i.zero == 0 {
            LoewnerClass::Nd
        } else if i.minus == 0 {
            LoewnerClass::Psd
        } else if i.plus == 0 {
            LoewnerClass::Nsd
        } else {
            LoewnerClass::Indefinite
        }
    }

    /// `H1 ⪰ H2`.
    pub fn is_geq(&self) -> bool {
        matches!(self, LoewnerClass::Pd | LoewnerClass::Psd)
    }
}

/// Classify `H1 − H2` in the Löwner order. An empty difference is PD.
pub fn loewner_compare<S: Spectral>(h1: &Hermitian<S>, h2: &Hermitian<S>, cfg: &ToleranceConfig) -> Result<LoewnerClass> {
    if h1.order() != h2.order() {
        return Err(RiaError::DimensionMismatch(format!("orders {} and {}", h1.order(), h2.order())));
    }
    let d = h1.sub(h2)?;
    Ok(LoewnerClass::from_inertia(&inertia(&d, cfg)))
}

// ---------------------------------------------------------------------------
// Exact kernels

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].inv();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(r, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Exact rank by forward elimination.
pub fn rank_q(m: &QMat) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in c..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].inv();
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &inv;
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(r, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        r += 1;
    }
    r
}

/// Exact inertia by symmetric congruence.
///
/// A nonzero diagonal pivot `d` is eliminated with the rank-one update
/// `W ← W − w w*/d`. When every diagonal entry is zero but some `W_ij = c`
/// is not, the 2×2 block `[[0, c], [c̄, 0]]` has inertia (1, 1) and is
/// eliminated through its inverse `[[0, 1/c̄], [1/c, 0]]`.
pub fn inertia_q(h: &QMat) -> Inertia {
    assert!(h.is_square(), "inertia of a non-square matrix");
    debug_assert!(h.is_hermitian_exact(), "inertia of a non-Hermitian matrix");
    let mut w = h.clone();
    let mut out = Inertia::default();
    loop {
        let n = w.rows();
        if n == 0 {
            return out;
        }
        // Prefer the diagonal pivot with the smallest numerator/denominator size.
        let diag = (0..n)
            .filter(|&i| !num_traits::Zero::is_zero(&w[(i, i)].re))
            .min_by_key(|&i| w[(i, i)].re.numer().bits() + w[(i, i)].re.denom().bits());
        if let Some(k) = diag {
            let d = w[(k, k)].clone();
            if d.re_signum() > 0 {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
            let dinv = d.inv();
            let col: Vec<Qi> = rest.iter().map(|&i| w[(i, k)].clone()).collect();
            let scaled: Vec<Qi> = col.iter().map(|c| c * &dinv).collect();
            let mut next = w.select_rows(&rest).select_cols(&rest);
            for a in 0..rest.len() {
                if scaled[a].is_zero() {
                    continue;
                }
                for b in 0..rest.len() {
                    if col[b].is_zero() {
                        continue;
                    }
                    let t = &scaled[a] * &col[b].conj();
                    next[(a, b)] = &next[(a, b)] - &t;
                }
            }
            w = next;
            continue;
        }
        let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !w[(i, j)].is_zero());
        let Some((i, j)) = off else {
            out.zero += n;
            return out;
        };
        out.plus += 1;
        out.minus += 1;
        let c = w[(i, j)].clone();
        let rest: Vec<usize> = (0..n).filter(|&t| t != i && t != j).collect();
        let ci: Vec<Qi> = rest.iter().map(|&t| w[(t, i)].clone()).collect();
        let cj: Vec<Qi> = rest.iter().map(|&t| w[(t, j)].clone()).collect();
        let inv_c = c.inv();
        let inv_cbar = c.conj().inv();
        let mut next = w.select_rows(&rest).select_cols(&rest);
        // C P⁻¹ C* with C = [ci, cj]: (cj/c)·ciᴴ + (ci/c̄)·cjᴴ.
        for a in 0..rest.len() {
            let u = &cj[a] * &inv_c;
            let v = &ci[a] * &inv_cbar;
            for b in 0..rest.len() {
                let t = &(&u * &ci[b].conj()) + &(&v * &cj[b].conj());
                if !t.is_zero() {
                    next[(a, b)] = &next[(a, b)] - &t;
                }
            }
        }
        w = next;
    }
}

/// Inverse of a nonsingular exact matrix by Gauss–Jordan; `None` if singular.
pub fn inverse_q(m: &QMat) -> Option<QMat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Mat::hstack(&[m, &QMat::identity(n)]).ok()?;
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return if n == 0 { Some(QMat::zeros(0, 0)) } else { None };
    }
    Some(r.submatrix(0, n, n, n))
}

/// Moore–Penrose inverse via the full-rank factorization `M = FG`:
/// `M† = G*(GG*)⁻¹(F*F)⁻¹F*`.
pub fn pinv_q(m: &QMat) -> QMat {
    let (r, piv) = rref(m);
    let k = piv.len();
    if k == 0 {
        return QMat::zeros(m.cols(), m.rows());
    }
    let f = m.select_cols(&piv);
    let g = r.submatrix(0, 0, k, m.cols());
    let fs = f.adjoint();
    let gs = g.adjoint();
    let ffi = inverse_q(&(&fs * &f)).expect("F*F is nonsingular for full column rank F");
    let ggi = inverse_q(&(&g * &gs)).expect("GG* is nonsingular for full row rank G");
    &(&(&gs * &ggi) * &ffi) * &fs
}

impl Spectral for Qi {
    fn rank_of(m: &QMat, _: &ToleranceConfig) -> usize {
        rank_q(m)
    }
    fn inertia_of(h: &QHerm, _: &ToleranceConfig) -> Inertia {
        inertia_q(h)
    }
    fn pinv_of(m: &QMat, _: &ToleranceConfig) -> QMat {
        pinv_q(m)
    }
}

// ---------------------------------------------------------------------------
// Float kernels

fn to_na(m: &FMat) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn from_na(m: &DMatrix<Complex64>) -> FMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn float_threshold(rows: usize, cols: usize, smax: f64, cfg: &ToleranceConfig) -> f64 {
    cfg.rank_rel_tol * rows.max(cols) as f64 * smax
}

fn singular_values(m: &FMat) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    to_na(m).singular_values().iter().copied().collect()
}

impl Spectral for Complex64 {
    fn rank_of(m: &FMat, cfg: &ToleranceConfig) -> usize {
        let sv = singular_values(m);
        let smax = sv.iter().copied().fold(0.0, f64::max);
        if smax == 0.0 {
            return 0;
        }
        let t = float_threshold(m.rows(), m.cols(), smax, cfg);
        sv.iter().filter(|&&s| s > t).count()
    }

    fn inertia_of(h: &Hermitian<Complex64>, cfg: &ToleranceConfig) -> Inertia {
        let n = h.order();
        if n == 0 {
            return Inertia::default();
        }
        let eig = to_na(h).symmetric_eigen();
        let smax = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if smax == 0.0 {
            return Inertia::new(0, 0, n);
        }
        let t = float_threshold(n, n, smax, cfg);
        let plus = eig.eigenvalues.iter().filter(|&&x| x > t).count();
        let minus = eig.eigenvalues.iter().filter(|&&x| x < -t).count();
        Inertia::new(plus, minus, n - plus - minus)
    }

    fn pinv_of(m: &FMat, cfg: &ToleranceConfig) -> FMat {
        if m.rows() == 0 || m.cols() == 0 {
            return Mat::zeros(m.cols(), m.rows());
        }
        let sv = singular_values(m);
        let smax = sv.iter().copied().fold(0.0, f64::max);
        if smax == 0.0 {
            return Mat::zeros(m.cols(), m.rows());
        }
        let t = float_threshold(m.rows(), m.cols(), smax, cfg);
        let p = to_na(m).svd(true, true).pseudo_inverse(t).expect("svd with vectors");
        from_na(&p)
    }
}

// Short exact helpers used throughout the formula modules.

/// Exact rank.
pub fn r(m: &QMat) -> usize {
    rank_q(m)
}

/// Exact inertia of a matrix that is Hermitian by construction.
pub fn inr(m: &QMat) -> Inertia {
    inertia_q(m)
}

/// Exact `(E_M, F_M)` as plain matrices.
pub fn ef(m: &QMat) -> (QMat, QMat) {
    let (e, f) = projectors(m, &ToleranceConfig::default());
    (e.into_mat(), f.into_mat())
}

/// Exact `r[A, B]`.
pub fn r_h(a: &QMat, b: &QMat) -> usize {
    rank_q(&Mat::hstack(&[a, b]).expect("r[A,B] row counts"))
}

/// Exact `r[A; B]`.
pub fn r_v(a: &QMat, b: &QMat) -> usize {
    rank_q(&Mat::vstack(&[a, b]).expect("r[A;B] column counts"))
}

/// Exact `R(B) ⊆ R(A)`.
pub fn within(b: &QMat, a: &QMat) -> bool {
    r_h(a, b) == rank_q(a)
}

/// Exact `PSD` test.
pub fn is_psd(m: &QMat) -> bool {
    inertia_q(m).minus == 0
}

/// Exact `NSD` test.
pub fn is_nsd(m: &QMat) -> bool {
    inertia_q(m).plus == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;
    use proptest::prelude::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn penrose(m: &QMat, p: &QMat) -> bool {
        &(m * p) * m == *m
            && &(p * m) * p == *p
            && (m * p).adjoint() == m * p
            && (p * m).adjoint() == p * m
    }

    #[test]
    fn rank_examples() {
        assert_eq!(r(&QMat::zeros(3, 3)), 0);
        assert_eq!(r(&QMat::ints(&[&[1, 1], &[1, 1]])), 1);
        // [A, B] with A = diag(1,−1), B = e₁: pivots in columns 0 and 1.
        let ab = QMat::ints(&[&[1, 0, 1], &[0, -1, 0]]);
        assert_eq!(r(&ab), 2);
        assert_eq!(r(&QMat::zeros(0, 3)), 0);
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inr(&QMat::int_diag(&[2, -3, 0])), Inertia::new(1, 1, 1));
        assert_eq!(inr(&QMat::ints(&[&[0, 1], &[1, 0]])), Inertia::new(1, 1, 0));
        // [[1,0,1],[0,−1,0],[1,0,0]]: pivot 1 leaves diag(−1, −1).
        assert_eq!(inr(&QMat::ints(&[&[1, 0, 1], &[0, -1, 0], &[1, 0, 0]])), Inertia::new(1, 2, 0));
        let c = QMat::from_rows(vec![vec![Qi::zero(), Qi::int(0, 1)], vec![Qi::int(0, -1), Qi::zero()]]);
        assert_eq!(inr(&c), Inertia::new(1, 1, 0));
        assert_eq!(inr(&QMat::zeros(0, 0)), Inertia::default());
    }

    #[test]
    fn pinv_examples() {
        assert_eq!(pinv_q(&QMat::identity(3)), QMat::identity(3));
        assert_eq!(pinv_q(&QMat::int_diag(&[2, 0])), QMat::diag(&[Qi::ratio(1, 2), Qi::zero()]));
        let ones = QMat::ints(&[&[1, 1], &[1, 1]]);
        let p = pinv_q(&ones);
        assert_eq!(p, QMat::from_fn(2, 2, |_, _| Qi::ratio(1, 4)));
        assert!(penrose(&ones, &p));
        assert_eq!(pinv_q(&QMat::zeros(2, 3)), QMat::zeros(3, 2));
    }

    #[test]
    fn projector_examples() {
        let (e, f) = ef(&QMat::identity(2));
        assert!(e.is_zero() && f.is_zero());
        let (e, f) = ef(&QMat::ints(&[&[1], &[0]]));
        assert_eq!(e, QMat::int_diag(&[0, 1]));
        assert_eq!(f, QMat::zeros(1, 1));
    }

    #[test]
    fn loewner_examples() {
        let c = cfg();
        let i2 = QHerm::identity(2);
        assert_eq!(loewner_compare(&i2, &QHerm::zeros(2), &c).unwrap(), LoewnerClass::Pd);
        // diag(0,−1) − diag(1−x,−1) at x = 2 is diag(1, 0).
        let h1 = QHerm::int_diag(&[0, -1]);
        let h2 = QHerm::int_diag(&[-1, -1]);
        assert_eq!(loewner_compare(&h1, &h2, &c).unwrap(), LoewnerClass::Psd);
        assert_eq!(loewner_compare(&QHerm::int_diag(&[1, -1]), &QHerm::zeros(2), &c).unwrap(), LoewnerClass::Indefinite);
        assert_eq!(loewner_compare(&QHerm::zeros(2), &QHerm::zeros(2), &c).unwrap(), LoewnerClass::Psd);
        assert!(loewner_compare(&QHerm::zeros(2), &QHerm::zeros(3), &c).is_err());
    }

    #[test]
    fn float_backend_examples() {
        let c = cfg();
        let h = QHerm::ints(&[&[1, 0, 1], &[0, -1, 0], &[1, 0, 0]]).lift();
        assert_eq!(inertia(&h, &c), Inertia::new(1, 2, 0));
        assert_eq!(rank(&QMat::ints(&[&[1, 1], &[1, 1]]).lift(), &c), 1);
        let p = pinv(&QMat::ints(&[&[1, 1], &[1, 1]]).lift(), &c);
        assert!((p[(0, 1)].re - 0.25).abs() < 1e-12);
    }

    /// Independent oracle: characteristic-polynomial sign changes (Descartes'
    /// rule is exact for real-rooted polynomials) on real symmetric input.
    fn inertia_by_charpoly(m: &QMat) -> Inertia {
        use num_rational::BigRational;
        use num_traits::{Signed, Zero};
        let n = m.rows();
        // Faddeev–LeVerrier: coefficients of det(tI − M).
        let mut coeffs = vec![BigRational::from_integer(1.into())];
        let mut mk = QMat::zeros(n, n);
        let ident = QMat::identity(n);
        for k in 1..=n {
            let prev = coeffs[k - 1].clone();
            mk = &(m * &mk) + &ident.scale(&Qi::new(prev, BigRational::zero()));
            let amk = m * &mk;
            let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + amk[(i, i)].re.clone());
            coeffs.push(-tr / BigRational::from_integer((k as i64).into()));
        }
        let zero = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        let sign_changes = |cs: &[BigRational]| {
            let s: Vec<bool> = cs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let plus = sign_changes(&coeffs);
        let flipped: Vec<BigRational> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (n - i) % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        let minus = sign_changes(&flipped);
        Inertia::new(plus, minus, zero)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn congruence_matches_charpoly(s in any::<u64>()) {
            let mut g = crate::sampling::GridSampler::new(s).real_only(true);
            let n = g.usize(1, 5);
            let h = g.structured_herm(n);
            prop_assert_eq!(inr(&h), inertia_by_charpoly(&h));
        }

        #[test]
        fn sylvester(h in arb_herm(4), p in arb_nonsingular(4)) {
            let t = &(&p * &h) * &p.adjoint();
            prop_assert_eq!(inr(&t), inr(&h));
        }

        #[test]
        fn scaling(h in arb_herm(3), k in 1i64..4) {
            prop_assert_eq!(inr(&h.scale(&Qi::int(k, 0))), inr(&h));
            prop_assert_eq!(inr(&h.scale(&Qi::int(-k, 0))), inr(&h).swapped());
        }

        #[test]
        fn block_additivity(a in arb_herm(3), b in arb_herm(2)) {
            let z = QMat::zeros(3, 2);
            let d = Mat::block(&[vec![&a, &z], vec![&z.adjoint(), &b]]).unwrap();
            prop_assert_eq!(inr(&d), inr(&a) + inr(&b));
        }

        #[test]
        fn rank_via_border(m in arb_structured(3, 2)) {
            let z1 = QMat::zeros(3, 3);
            let z2 = QMat::zeros(2, 2);
            let ms = m.adjoint();
            let big = Mat::block(&[vec![&z1, &m], vec![&ms, &z2]]).unwrap();
            let k = r(&m);
            prop_assert_eq!(inr(&big), Inertia::new(k, k, 5 - 2 * k));
        }

        #[test]
        fn pinv_penrose(m in arb_structured(3, 4)) {
            let p = pinv_q(&m);
            prop_assert!(penrose(&m, &p));
            prop_assert_eq!(pinv_q(&p), m);
        }

        #[test]
        fn projector_laws(m in arb_structured(4, 2)) {
            let (e, f) = ef(&m);
            prop_assert_eq!(&e * &e, e.clone());
            prop_assert_eq!(&f * &f, f.clone());
            prop_assert!((&e * &m).is_zero());
            prop_assert!((&m * &f).is_zero());
            prop_assert!(e.is_hermitian_exact() && f.is_hermitian_exact());
        }

        #[test]
        fn rank_equals_inertia_rank(h in arb_herm(4)) {
            prop_assert_eq!(r(&h), inr(&h).rank());
        }

        #[test]
        fn rref_rank_agrees(m in arb_structured(3, 5)) {
            prop_assert_eq!(rref(&m).1.len(), r(&m));
        }
    }
}
