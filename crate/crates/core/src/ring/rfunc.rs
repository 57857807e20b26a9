//! Rational functions with all poles outside the closed unit disk.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::horner;
use super::roots::den_admissible;
use super::{GRat, Poly, RingError};

/// Points farther than this past the unit circle are rejected by `eval`.
pub const DISK_SLACK: f64 = 1e-12;

/// An exact bounded analytic function on the disk: `num / den` with
/// `gcd(num, den) = 1`, `den(0) = 1`, and every root of `den` outside the
/// closed unit disk. The normalization makes the representation unique, so
/// structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RFuncRepr", into = "RFuncRepr")]
pub struct RFunc {
    num: Poly,
    den: Poly,
}

#[derive(Serialize, Deserialize)]
struct RFuncRepr {
    num: Poly,
    #[serde(default = "Poly::one")]
    den: Poly,
}

impl TryFrom<RFuncRepr> for RFunc {
    type Error = RingError;
    fn try_from(r: RFuncRepr) -> Result<Self, RingError> {
        RFunc::new(r.num, r.den)
    }
}

impl From<RFunc> for RFuncRepr {
    fn from(f: RFunc) -> Self {
        RFuncRepr { num: f.num, den: f.den }
    }
}

impl RFunc {
    /// Normalizes `num / den` and checks that the reduced denominator has
    /// no roots in the closed disk.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (num, den) = reduce(num, den);
        if !den_admissible(&den)? {
            return Err(RingError::Inadmissible(format!("denominator {den} has a root in the closed unit disk")));
        }
        Ok(Self::scaled(num, den))
    }

    /// Closed operations (sums, products) of admissible functions stay
    /// admissible, so they skip the root test.
    fn normalized(num: Poly, den: Poly) -> Self {
        let (num, den) = reduce(num, den);
        Self::scaled(num, den)
    }

    fn scaled(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let d0 = den.coeff(0);
        match d0.inv() {
            Some(inv) if !d0.is_one() => RFunc { num: num.scale(&inv), den: den.scale(&inv) },
            Some(_) => RFunc { num, den },
            None => unreachable!("admissible denominators do not vanish at the origin"),
        }
    }

    pub fn zero() -> Self {
        RFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(GRat::one())
    }

    pub fn constant(c: GRat) -> Self {
        RFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RFunc { num: p, den: Poly::one() }
    }

    /// `c z^k`.
    pub fn monomial(c: GRat, k: usize) -> Self {
        Self::from_poly(Poly::monomial(c, k))
    }

    /// `z`.
    pub fn z() -> Self {
        Self::monomial(GRat::one(), 1)
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_poly(Poly::from_ints(cs))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Value at the origin (the constant Taylor coefficient).
    pub fn value_at_zero(&self) -> GRat {
        self.num.coeff(0)
    }

    /// Order of vanishing at the origin; `None` for the zero function.
    pub fn valuation(&self) -> Option<usize> {
        self.num.valuation()
    }

    /// Exact value at a point of the closed disk; `None` if the point is a pole.
    pub fn eval_exact(&self, z: &GRat) -> Option<GRat> {
        self.num.eval_exact(z).checked_div(&self.den.eval_exact(z))
    }

    /// Double-precision value. For degrees up to 64 with moderate
    /// coefficients the relative error stays below `2^-40`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, RingError> {
        if z.norm() > 1.0 + DISK_SLACK {
            return Err(RingError::Domain(format!("|z| = {} lies outside the closed unit disk", z.norm())));
        }
        Ok(self.to_float().eval(z))
    }

    pub fn to_float(&self) -> FloatRFunc {
        FloatRFunc { num: self.num.to_complex(), den: self.den.to_complex() }
    }

    /// Maclaurin coefficients `0..=order` by exact power-series division.
    pub fn taylor_coeffs(&self, order: usize) -> Vec<GRat> {
        // den(0) = 1, so no division is needed
        let mut out: Vec<GRat> = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut c = self.num.coeff(j);
            for (i, d) in self.den.coeffs().iter().enumerate().skip(1).take(j) {
                c = &c - &(d * &out[j - i]);
            }
            out.push(c);
        }
        out
    }

    /// The `j`-th Maclaurin coefficient, `f^(j)(0) / j!`.
    pub fn taylor_coeff(&self, j: usize) -> GRat {
        self.taylor_coeffs(j).pop().expect("non-empty")
    }

    pub fn scale(&self, c: &GRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        RFunc { num: self.num.shift_up(k), den: self.den.clone() }
    }

    /// Divide by `z^k`, which must divide exactly.
    pub fn shift_down(&self, k: usize) -> Result<Self, RingError> {
        self.num
            .shift_down(k)
            .map(|num| RFunc { num, den: self.den.clone() })
            .ok_or_else(|| RingError::NotDivisible(format!("z^{k} does not divide {self}")))
    }

    pub fn pow(&self, exp: u32) -> Self {
        RFunc::normalized(self.num.pow(exp), self.den.pow(exp))
    }

    /// `self / rhs`, provided the quotient is again admissible.
    pub fn checked_div(&self, rhs: &RFunc) -> Result<Self, RingError> {
        if rhs.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (num, den) = reduce(&self.num * &rhs.den, &self.den * &rhs.num);
        if !den_admissible(&den)? {
            return Err(RingError::NotDivisible(format!("{self} / {rhs} has a pole in the closed unit disk")));
        }
        Ok(Self::scaled(num, den))
    }

    /// Divide by a polynomial, provided the quotient is again admissible.
    pub fn div_poly(&self, p: &Poly) -> Result<Self, RingError> {
        self.checked_div(&RFunc::normalized(p.clone(), Poly::one()))
    }

    /// `self(inner(z))`, checked for admissibility.
    pub fn compose(&self, inner: &RFunc) -> Result<Self, RingError> {
        let top = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        let homogenize = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &inner.num.pow(k as u32) * &inner.den.pow((top - k) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        RFunc::new(homogenize(&self.num), homogenize(&self.den))
    }

    /// Substitute `z -> z^d`.
    pub fn inflate(&self, d: usize) -> Self {
        RFunc { num: self.num.inflate(d), den: self.den.inflate(d) }
    }

    /// The function `g` with `g(z^d) = self(z)`, if it exists.
    pub fn deflate(&self, d: usize) -> Option<Self> {
        Some(RFunc { num: self.num.deflate(d)?, den: self.den.deflate(d)? })
    }
}

fn reduce(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    if den.is_constant() {
        return (num, den);
    }
    let g = Poly::gcd(&num, &den);
    if g.is_one() {
        return (num, den);
    }
    (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
}

/// Double-precision copy of an [`RFunc`] for repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatRFunc {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

impl FloatRFunc {
    /// No domain check; callers guarantee `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.num, z) / horner(&self.den, z)
    }
}

impl fmt::Debug for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RFunc {
    type Output = RFunc;
    fn add(self, rhs: &RFunc) -> RFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RFunc::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RFunc {
    type Output = RFunc;
    fn sub(self, rhs: &RFunc) -> RFunc {
        self + &(-rhs)
    }
}

impl Mul for &RFunc {
    type Output = RFunc;
    fn mul(self, rhs: &RFunc) -> RFunc {
        if self.is_zero() || rhs.is_zero() {
            return RFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RFunc::from_poly(&self.num * &rhs.num);
        }
        RFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        RFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RFunc {
            type Output = RFunc;
            fn $m(self, rhs: RFunc) -> RFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RFunc {
    type Output = RFunc;
    fn neg(self) -> RFunc {
        -&self
    }
}

impl From<Poly> for RFunc {
    fn from(p: Poly) -> Self {
        RFunc::from_poly(p)
    }
}

impl From<GRat> for RFunc {
    fn from(c: GRat) -> Self {
        RFunc::constant(c)
    }
}
