//! Scalar fields: exact Gaussian rationals and complex doubles.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RiaError;

/// Which arithmetic a matrix is carried in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = RiaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(RiaError::Parse(format!("unknown backend '{other}'"))),
        }
    }
}

/// Field operations shared by both backends.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn conj(&self) -> Self;
    /// Exact zero test for `Qi`; literal `== 0` for floats.
    fn is_zero(&self) -> bool;
    fn is_real(&self) -> bool;
    /// `(re, im)` as decimal or `p/q` strings.
    fn to_parts(&self) -> (String, String);
    fn from_parts(re: &str, im: &str) -> Result<Self, RiaError>;
    fn to_c64(&self) -> Complex64;
    /// Squared modulus as a float, used for pivot selection.
    fn norm_sqr_f64(&self) -> f64;
}

/// Gaussian rational `re + i·im` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn int(re: i64, im: i64) -> Self {
        Qi {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Qi {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Qi::int(0, 1)
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        assert!(!d.is_zero(), "division by exact zero");
        Qi {
            re: &self.re / &d,
            im: -(&self.im / &d),
        }
    }

    /// Sign of the real part.
    pub fn re_signum(&self) -> i32 {
        if self.re.is_zero() {
            0
        } else if self.re.is_positive() {
            1
        } else {
            -1
        }
    }
}

fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational, RiaError> {
    let s = s.trim();
    let bad = || RiaError::Parse(format!("invalid rational '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(RiaError::Parse(format!("zero denominator in '{s}'")));
        }
        Ok(BigRational::new(p, q))
    } else if let Ok(p) = BigInt::from_str(s) {
        Ok(BigRational::from_integer(p))
    } else if let Some((ip, fp)) = s.split_once('.') {
        // Finite decimals are exactly rational.
        let neg = ip.trim_start().starts_with('-');
        let ip_digits = ip.trim().trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return Err(bad());
        }
        let whole = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp);
        let num = BigInt::from_str(&whole).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    } else {
        Err(bad())
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rat_to_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rat_to_string(&self.im))
        } else {
            write!(f, "{}{}{}i", rat_to_string(&self.re), if self.im.is_negative() { "" } else { "+" }, rat_to_string(&self.im))
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        Qi { re: self.re + o.re, im: self.im + o.im }
    }
}
impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        Qi { re: self.re - o.re, im: self.im - o.im }
    }
}
impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        &self * &o
    }
}
impl Div for Qi {
    type Output = Qi;
    fn div(self, o: Qi) -> Qi {
        &self * &o.inv()
    }
}
impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}
impl<'a> Add<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn add(self, o: &Qi) -> Qi {
        Qi { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl<'a> Sub<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn sub(self, o: &Qi) -> Qi {
        Qi { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl<'a> Mul<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn mul(self, o: &Qi) -> Qi {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Scalar for Qi {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Qi::default()
    }
    fn one() -> Self {
        Qi::int(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        Qi::int(v, 0)
    }
    fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn to_parts(&self) -> (String, String) {
        (rat_to_string(&self.re), rat_to_string(&self.im))
    }
    fn from_parts(re: &str, im: &str) -> Result<Self, RiaError> {
        Ok(Qi { re: parse_rat(re)?, im: parse_rat(im)? })
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
    fn norm_sqr_f64(&self) -> f64 {
        self.to_c64().norm_sqr()
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_real(&self) -> bool {
        self.im == 0.0
    }
    fn to_parts(&self) -> (String, String) {
        // `{:?}` on f64 prints the shortest string that round-trips.
        (format!("{:?}", self.re), format!("{:?}", self.im))
    }
    fn from_parts(re: &str, im: &str) -> Result<Self, RiaError> {
        let p = |s: &str| -> Result<f64, RiaError> {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let a: f64 = a.trim().parse().map_err(|_| RiaError::Parse(format!("invalid float '{s}'")))?;
                let b: f64 = b.trim().parse().map_err(|_| RiaError::Parse(format!("invalid float '{s}'")))?;
                return Ok(a / b);
            }
            s.parse().map_err(|_| RiaError::Parse(format!("invalid float '{s}'")))
        };
        Ok(Complex64::new(p(re)?, p(im)?))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn norm_sqr_f64(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi() -> impl Strategy<Value = Qi> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
            Qi::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Qi::from_parts("3/6", "-2").unwrap(), Qi::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer((-2).into())));
        assert_eq!(Qi::from_parts("0.25", "-1.5").unwrap().to_parts(), ("1/4".to_string(), "-3/2".to_string()));
        assert_eq!(Qi::from_parts("4/-8", "0").unwrap().to_parts().0, "-1/2");
        assert!(Qi::from_parts("1/0", "0").is_err());
        assert!(Qi::from_parts("abc", "0").is_err());
    }

    #[test]
    fn i_squared() {
        assert_eq!(Qi::i() * Qi::i(), Qi::int(-1, 0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn conj_involution(a in qi()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!((a.clone() * a.conj()).is_real());
        }

        #[test]
        fn field_laws(a in qi(), b in qi(), c in qi()) {
            prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
            if !Scalar::is_zero(&b) {
                prop_assert_eq!(a.clone() / b.clone() * b.clone(), a.clone());
            }
            prop_assert!(a.re.denom().is_positive());
        }

        #[test]
        fn roundtrip(a in qi()) {
            let (r, i) = a.to_parts();
            prop_assert_eq!(Qi::from_parts(&r, &i).unwrap(), a);
        }

        #[test]
        fn float_roundtrip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            let (r, i) = Scalar::to_parts(&z);
            prop_assert_eq!(<Complex64 as Scalar>::from_parts(&r, &i).unwrap(), z);
        }
    }
}
