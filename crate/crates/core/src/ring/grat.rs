//! Gaussian rationals `p/q + (r/s) i`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::complex::Complex64;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::{BigInt, BigRational};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use super::RingError;

/// An exact complex scalar with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GRat { re, im: BigRational::zero() }
    }

    /// `n/d` as a real Gaussian rational. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `(a/b) + (c/d) i`.
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        GRat::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn zero() -> Self {
        GRat::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GRat::new(self.re.clone(), -&self.im)
    }

    /// `|x|^2`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &GRat) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GRat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, RingError> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| RingError::Parse(format!("not a rational number: {s:?}")))
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({}-{}i)", self.re, -&self.im)
                } else {
                    write!(f, "({}+{}i)", self.re, self.im)
                }
            }
        }
    }
}

impl Add for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

/// Panics on division by zero, like `BigRational`.
impl Div for &GRat {
    type Output = GRat;
    fn div(self, rhs: &GRat) -> GRat {
        self.checked_div(rhs).expect("division of a Gaussian rational by zero")
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GRat {
            type Output = GRat;
            fn $m(self, rhs: GRat) -> GRat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -&self
    }
}

impl From<i64> for GRat {
    fn from(n: i64) -> Self {
        GRat::from_int(n)
    }
}

impl FromStr for GRat {
    type Err = RingError;

    /// Accepts a real rational such as `"-3/4"`.
    fn from_str(s: &str) -> Result<Self, RingError> {
        parse_rational(s).map(GRat::real)
    }
}

impl Serialize for GRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.re.to_string())?;
        t.serialize_element(&self.im.to_string())?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for GRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair(String, String),
            Real(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair(re, im) => Ok(GRat::new(
                parse_rational(&re).map_err(de::Error::custom)?,
                parse_rational(&im).map_err(de::Error::custom)?,
            )),
            Repr::Real(re) => Ok(GRat::real(parse_rational(&re).map_err(de::Error::custom)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = GRat::complex(1, 2, 3, 1);
        let b = GRat::complex(-2, 1, 1, 5);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!(GRat::zero().inv().is_none());
        assert_eq!(&GRat::i() * &GRat::i(), GRat::from_int(-1));
    }

    #[test]
    fn norm_and_conjugate() {
        let a = GRat::complex(3, 1, -4, 1);
        assert_eq!(a.norm_sqr(), BigRational::from_integer(25.into()));
        assert_eq!(&a * &a.conj(), GRat::from_int(25));
    }

    #[test]
    fn serde_pair_and_plain_string() {
        let a: GRat = serde_json::from_str(r#"["1/2","-3"]"#).unwrap();
        assert_eq!(a, GRat::complex(1, 2, -3, 1));
        let b: GRat = serde_json::from_str(r#""7/3""#).unwrap();
        assert_eq!(b, GRat::ratio(7, 3));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"["1/2","-3"]"#);
        assert!(serde_json::from_str::<GRat>(r#"["1/0","0"]"#).is_err());
    }
}
