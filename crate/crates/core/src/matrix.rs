//! Dense row-major matrices, block assembly and the JSON wire format.

use std::fmt;
use std::ops::{Add, Deref, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, RiaError};
use crate::scalar::{Backend, Qi, Scalar};

/// Dense `rows × cols` matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type QMat = Mat<Qi>;
pub type FMat = Mat<Complex64>;

impl<S: Scalar> Mat<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(RiaError::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Panics on ragged input; intended for literals in tests and examples.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(d: &[S]) -> Self {
        let n = d.len();
        Mat::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn backend(&self) -> Backend {
        S::BACKEND
    }
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Mat<S>) -> Result<Mat<S>> {
        if self.cols != other.rows {
            return Err(RiaError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], S::zero());
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Mat<S>) -> Result<Mat<S>> {
        self.same_shape(other, "add")?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone()))
    }

    pub fn checked_sub(&self, other: &Mat<S>) -> Result<Mat<S>> {
        self.same_shape(other, "subtract")?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone()))
    }

    fn same_shape(&self, other: &Mat<S>, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(RiaError::DimensionMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| s.clone() * self[(i, j)].clone())
    }

    /// `[A, B]`.
    pub fn hstack(parts: &[&Mat<S>]) -> Result<Self> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(RiaError::DimensionMismatch("hstack: row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            out.set_block(0, off, m);
            off += m.cols;
        }
        Ok(out)
    }

    /// `[A; B]`.
    pub fn vstack(parts: &[&Mat<S>]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(RiaError::DimensionMismatch("vstack: column counts differ".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            out.set_block(off, 0, m);
            off += m.rows;
        }
        Ok(out)
    }

    /// Assemble a block matrix from a grid. Every block in a grid row must share
    /// its height and every block in a grid column its width.
    pub fn block(grid: &[Vec<&Mat<S>>]) -> Result<Self> {
        if grid.is_empty() {
            return Ok(Mat::zeros(0, 0));
        }
        let ncols = grid[0].len();
        if grid.iter().any(|r| r.len() != ncols) {
            return Err(RiaError::DimensionMismatch("block: ragged block grid".into()));
        }
        let heights: Vec<usize> = grid.iter().map(|r| r.first().map_or(0, |m| m.rows)).collect();
        let widths: Vec<usize> = (0..ncols).map(|j| grid[0][j].cols).collect();
        for (bi, r) in grid.iter().enumerate() {
            for (bj, m) in r.iter().enumerate() {
                if m.rows != heights[bi] || m.cols != widths[bj] {
                    return Err(RiaError::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        m.rows, m.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let mut out = Mat::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, r) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, m) in r.iter().enumerate() {
                out.set_block(r0, c0, m);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Mat<S>) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self[(r0 + i, c0 + j)] = m[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Mat::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Largest `|M_ij − conj(M_ji)|`; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)].to_c64() - self[(j, i)].to_c64().conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Literal test `M == M*`.
    pub fn is_hermitian_exact(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// Copy to the float backend.
    pub fn lift(&self) -> FMat {
        self.map(|s| s.to_c64())
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; they are used where shapes are
// fixed by construction. Public entry points validate with the checked forms.
impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, o: &Mat<S>) -> Mat<S> {
        self.matmul(o).expect("matrix product shape")
    }
}
impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, o: &Mat<S>) -> Mat<S> {
        self.checked_add(o).expect("matrix sum shape")
    }
}
impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, o: &Mat<S>) -> Mat<S> {
        self.checked_sub(o).expect("matrix difference shape")
    }
}
impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl Mat<Qi> {
    /// Integer literal helper: `QMat::ints(&[&[1, 0], &[0, -1]])`.
    pub fn ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| Qi::int(v, 0)).collect()).collect())
    }

    pub fn int_diag(d: &[i64]) -> Self {
        Mat::diag(&d.iter().map(|&v| Qi::int(v, 0)).collect::<Vec<_>>())
    }
}

/// A square matrix certified equal to its adjoint.
#[derive(Clone, PartialEq)]
pub struct Hermitian<S>(Mat<S>);

pub type QHerm = Hermitian<Qi>;

impl<S: Scalar> Hermitian<S> {
    /// Literal check for the exact backend; floats must be within `tol` and are
    /// then replaced by `(M + M*)/2`.
    pub fn new(m: Mat<S>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(RiaError::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.rows, m.cols
            )));
        }
        match S::BACKEND {
            Backend::Exact => {
                if m.is_hermitian_exact() {
                    Ok(Hermitian(m))
                } else {
                    Err(RiaError::NotHermitian(format!("{}", m.hermitian_defect())))
                }
            }
            Backend::Float => {
                let d = m.hermitian_defect();
                if d > tol {
                    return Err(RiaError::NotHermitian(format!("{d:e} > {tol:e}")));
                }
                let half = S::one() / S::from_i64(2);
                let sym = (&m + &m.adjoint()).scale(&half);
                Ok(Hermitian(sym))
            }
        }
    }

    /// Wrap a matrix that is Hermitian by construction. Debug builds verify.
    pub fn from_construction(m: Mat<S>) -> Self {
        debug_assert!(
            m.is_square() && (S::BACKEND == Backend::Float || m.is_hermitian_exact()),
            "from_construction on a non-Hermitian matrix {m:?}"
        );
        Hermitian(m)
    }

    pub fn zeros(n: usize) -> Self {
        Hermitian(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Hermitian(Mat::identity(n))
    }

    pub fn order(&self) -> usize {
        self.0.rows
    }

    pub fn as_mat(&self) -> &Mat<S> {
        &self.0
    }

    pub fn into_mat(self) -> Mat<S> {
        self.0
    }

    /// `P H P*`.
    pub fn congruence(&self, p: &Mat<S>) -> Result<Self> {
        let t = p.matmul(&self.0)?.matmul(&p.adjoint())?;
        Ok(Hermitian(t))
    }

    pub fn neg(&self) -> Self {
        Hermitian(-&self.0)
    }

    pub fn sub(&self, o: &Hermitian<S>) -> Result<Self> {
        Ok(Hermitian(self.0.checked_sub(&o.0)?))
    }

    pub fn add(&self, o: &Hermitian<S>) -> Result<Self> {
        Ok(Hermitian(self.0.checked_add(&o.0)?))
    }

    pub fn lift(&self) -> Hermitian<Complex64> {
        Hermitian(self.0.lift())
    }
}

impl Hermitian<Qi> {
    pub fn int_diag(d: &[i64]) -> Self {
        Hermitian(Mat::int_diag(d))
    }

    /// Panics if not Hermitian; for literals.
    pub fn ints(rows: &[&[i64]]) -> Self {
        Hermitian::new(Mat::ints(rows), 0.0).expect("literal is not Hermitian")
    }
}

impl<S> Deref for Hermitian<S> {
    type Target = Mat<S>;
    fn deref(&self) -> &Mat<S> {
        &self.0
    }
}

impl<S: Scalar> fmt::Debug for Hermitian<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// Certify `m` as Hermitian; see [`Hermitian::new`].
pub fn as_hermitian<S: Scalar>(m: Mat<S>, tol: f64) -> Result<Hermitian<S>> {
    Hermitian::new(m, tol)
}

/// The JSON shape of a matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub backend: Backend,
    pub entries: Vec<[String; 2]>,
}

impl<S: Scalar> Mat<S> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            backend: S::BACKEND,
            entries: self
                .data
                .iter()
                .map(|s| {
                    let (r, i) = s.to_parts();
                    [r, i]
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.backend != S::BACKEND {
            return Err(RiaError::BackendMismatch(format!(
                "expected a {} matrix, found {}",
                S::BACKEND,
                j.backend
            )));
        }
        let data = j
            .entries
            .iter()
            .map(|[r, i]| S::from_parts(r, i))
            .collect::<Result<Vec<_>>>()?;
        Mat::from_vec(j.rows, j.cols, data)
    }
}

impl<S: Scalar> Serialize for Mat<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Mat<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        Mat::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl<S: Scalar> Serialize for Hermitian<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.0.serialize(s)
    }
}

/// A matrix read from JSON whose backend is known only at runtime.
#[derive(Clone, PartialEq, Debug)]
pub enum AnyMatrix {
    Exact(QMat),
    Float(FMat),
}

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            AnyMatrix::Exact(_) => Backend::Exact,
            AnyMatrix::Float(_) => Backend::Float,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s)?;
        Ok(match j.backend {
            Backend::Exact => AnyMatrix::Exact(Mat::from_json(&j)?),
            Backend::Float => AnyMatrix::Float(Mat::from_json(&j)?),
        })
    }

    /// Convert to the requested backend. Only exact→float is allowed.
    pub fn into_backend(self, b: Backend) -> Result<Self> {
        match (self, b) {
            (AnyMatrix::Exact(m), Backend::Float) => Ok(AnyMatrix::Float(m.lift())),
            (AnyMatrix::Float(_), Backend::Exact) => Err(RiaError::BackendMismatch(
                "float input cannot be used with the exact backend".into(),
            )),
            (m, _) => Ok(m),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            AnyMatrix::Exact(m) => serde_json::to_value(m.to_json()),
            AnyMatrix::Float(m) => serde_json::to_value(m.to_json()),
        }
        .expect("matrix json")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_qmat;
    use proptest::prelude::*;

    #[test]
    fn adjoint_examples() {
        let i2 = QMat::identity(2);
        assert_eq!(i2.adjoint(), i2);
        let row = Mat::from_rows(vec![vec![Qi::zero(), Qi::i()]]);
        let col = Mat::from_rows(vec![vec![Qi::zero()], vec![-Qi::i()]]);
        assert_eq!(row.adjoint(), col);
    }

    #[test]
    fn matmul_examples() {
        let x = QMat::ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(&QMat::identity(2) * &x, x);
        let outer = &(&QMat::ints(&[&[1], &[0]]) * &QMat::ints(&[&[3]])) * &QMat::ints(&[&[1, 0]]);
        assert_eq!(outer, QMat::ints(&[&[3, 0], &[0, 0]]));
        assert!(matches!(x.matmul(&QMat::zeros(3, 1)), Err(RiaError::DimensionMismatch(_))));
    }

    #[test]
    fn block_examples() {
        let a = QMat::int_diag(&[1, -1]);
        let b = QMat::ints(&[&[1], &[0]]);
        let bs = b.adjoint();
        let z = QMat::zeros(1, 1);
        let m1 = Mat::block(&[vec![&a, &b], vec![&bs, &z]]).unwrap();
        assert_eq!(m1, QMat::ints(&[&[1, 0, 1], &[0, -1, 0], &[1, 0, 0]]));
        assert_eq!(Mat::block(&[vec![&a]]).unwrap(), a);
        assert!(Mat::block(&[vec![&a, &b], vec![&b, &z]]).is_err());
    }

    #[test]
    fn zero_sized_blocks() {
        let a = QMat::int_diag(&[2]);
        let e = QMat::zeros(1, 0);
        let m = Mat::block(&[vec![&a, &e], vec![&e.adjoint(), &QMat::zeros(0, 0)]]).unwrap();
        assert_eq!(m, a);
        assert_eq!((&QMat::zeros(2, 0) * &QMat::zeros(0, 3)), QMat::zeros(2, 3));
    }

    #[test]
    fn hermitian_wrapper() {
        assert!(as_hermitian(QMat::int_diag(&[1, -1]), 0.0).is_ok());
        assert!(matches!(as_hermitian(QMat::ints(&[&[0, 1], &[0, 0]]), 0.0), Err(RiaError::NotHermitian(_))));
        let f = FMat::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 1e-12)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let h = as_hermitian(f.clone(), 1e-9).unwrap();
        assert_eq!(h.hermitian_defect(), 0.0);
        assert!(as_hermitian(f, 1e-15).is_err());
    }

    #[test]
    fn json_shape() {
        let m = QMat::from_rows(vec![vec![Qi::ratio(1, 2), Qi::int(0, -3)]]);
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v, serde_json::json!({"rows":1,"cols":2,"backend":"exact","entries":[["1/2","0"],["0","-3"]]}));
        let back: QMat = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_value::<FMat>(v).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn adjoint_involution(r in arb_qmat(3, 4)) {
            prop_assert_eq!(r.adjoint().adjoint(), r);
        }

        #[test]
        fn product_adjoint(a in arb_qmat(3, 3), b in arb_qmat(3, 3)) {
            prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        }

        #[test]
        fn distributive(a in arb_qmat(3, 2), b in arb_qmat(3, 2), c in arb_qmat(2, 3)) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn symmetrized_is_hermitian(r in arb_qmat(3, 3)) {
            let h = (&r + &r.adjoint()).scale(&Qi::ratio(1, 2));
            prop_assert!(as_hermitian(h, 0.0).is_ok());
        }

        #[test]
        fn json_roundtrip(m in arb_qmat(2, 3)) {
            let s = serde_json::to_string(&m).unwrap();
            let back = AnyMatrix::from_json_str(&s).unwrap();
            prop_assert_eq!(back, AnyMatrix::Exact(m.clone()));
            let f = m.lift();
            let back: FMat = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
