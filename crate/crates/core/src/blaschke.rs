//! Finite Blaschke products, exact division by `B`, and `B`-adic expansion.
//!
//! Factors are left unnormalized: a zero `a` contributes `(a - z)/(1 - conj(a) z)`
//! and a zero at the origin contributes `z`. The usual normalization multiplies
//! `B` by a unimodular constant, which changes none of `B H^inf`,
//! `C + B H^inf`, or the `B`-adic subalgebras, and dropping it keeps every
//! coefficient a Gaussian rational.

use num::complex::Complex64;
use num::traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kset::KSet;
use crate::ring::{GRat, Poly, RFunc, RingError, DISK_SLACK};

/// Most `B`-adic levels [`Blaschke::expand`] will compute.
pub const MAX_LEVELS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlaschkeError {
    #[error("a Blaschke product needs at least one zero")]
    NoZeros,
    #[error("zero {0} is not inside the open unit disk")]
    ZeroOutsideDisk(Box<GRat>),
    #[error("point outside the closed unit disk")]
    Domain,
    #[error("B does not divide {0}")]
    NotDivisible(String),
    #[error("level {level}: {values}")]
    NotExpandable { level: usize, values: Box<ZeroValues> },
    #[error("level {level}: {reason}")]
    NotExpandableOrder { level: usize, reason: String },
    #[error("requested {0} levels; at most {MAX_LEVELS} are supported")]
    TooManyLevels(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Two zeros of `B` at which a remainder takes different values.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroValues {
    pub at_first: GRat,
    pub first: GRat,
    pub at_second: GRat,
    pub second: GRat,
}

impl std::fmt::Display for ZeroValues {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "values {} at {} and {} at {} differ", self.first, self.at_first, self.second, self.at_second)
    }
}

#[derive(Deserialize)]
struct BlaschkeRepr {
    zeros: Vec<GRat>,
}

/// A finite Blaschke product, stored as its multiset of zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BlaschkeRepr")]
pub struct Blaschke {
    zeros: Vec<GRat>,
    #[serde(skip)]
    func: RFunc,
}

impl TryFrom<BlaschkeRepr> for Blaschke {
    type Error = BlaschkeError;
    fn try_from(r: BlaschkeRepr) -> Result<Self, BlaschkeError> {
        Blaschke::new(r.zeros)
    }
}

impl Blaschke {
    pub fn new(zeros: Vec<GRat>) -> Result<Self, BlaschkeError> {
        if zeros.is_empty() {
            return Err(BlaschkeError::NoZeros);
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm_sqr() < num::BigRational::one())) {
            return Err(BlaschkeError::ZeroOutsideDisk(Box::new(a.clone())));
        }
        let mut num = Poly::one();
        let mut den = Poly::one();
        for a in &zeros {
            if a.is_zero() {
                num = num.shift_up(1);
            } else {
                // (a - z) / (1 - conj(a) z)
                num = &num * &Poly::new(vec![a.clone(), GRat::from_int(-1)]);
                den = &den * &Poly::new(vec![GRat::one(), -a.conj()]);
            }
        }
        let func = RFunc::new(num, den)?;
        Ok(Blaschke { zeros, func })
    }

    /// The product `z^k`.
    pub fn z_power(k: usize) -> Self {
        Blaschke::new(vec![GRat::zero(); k.max(1)]).expect("origin lies in the disk")
    }

    pub fn zeros(&self) -> &[GRat] {
        &self.zeros
    }

    /// Distinct zeros in first-seen order.
    pub fn distinct_zeros(&self) -> Vec<GRat> {
        let mut out: Vec<GRat> = Vec::new();
        for a in &self.zeros {
            if !out.contains(a) {
                out.push(a.clone());
            }
        }
        out
    }

    pub fn as_rfunc(&self) -> &RFunc {
        &self.func
    }

    pub fn pow(&self, j: usize) -> RFunc {
        self.func.pow(j as u32)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, BlaschkeError> {
        if z.norm() > 1.0 + DISK_SLACK {
            return Err(BlaschkeError::Domain);
        }
        Ok(self
            .zeros
            .iter()
            .map(|a| {
                let a = a.to_complex();
                if a == Complex64::new(0.0, 0.0) {
                    z
                } else {
                    (a - z) / (1.0 - a.conj() * z)
                }
            })
            .product())
    }

    /// `g` with `f = B g`.
    pub fn divide(&self, f: &RFunc) -> Result<RFunc, BlaschkeError> {
        if f.is_zero() {
            return Ok(RFunc::zero());
        }
        // B = num_B / den_B with den_B admissible; g = f den_B / num_B
        let q = f.num().exact_div(self.func.num()).map_err(|_| BlaschkeError::NotDivisible(f.to_string()))?;
        Ok(RFunc::new(&q * self.func.den(), f.den().clone())?)
    }

    /// Largest `j <= cap` with `B^j | f`; `cap` for `f = 0`.
    pub fn order_dividing(&self, f: &RFunc, cap: usize) -> usize {
        let mut cur = f.clone();
        for j in 0..cap {
            match self.divide(&cur) {
                Ok(next) => cur = next,
                Err(_) => return j,
            }
            if cur.is_zero() {
                return cap;
            }
        }
        cap
    }

    /// Splits `f = c_0 + c_1 B + ... + c_{J-1} B^{J-1} + B^J tail`.
    pub fn expand(&self, f: &RFunc, levels: usize) -> Result<BAdic, BlaschkeError> {
        if levels > MAX_LEVELS {
            return Err(BlaschkeError::TooManyLevels(levels));
        }
        let distinct = self.distinct_zeros();
        let mut coefficients = Vec::with_capacity(levels);
        let mut rem = f.clone();
        for level in 0..levels {
            let at = |a: &GRat| rem.eval_exact(a).expect("admissible functions are finite on the disk");
            let first = at(&distinct[0]);
            for a in &distinct[1..] {
                let v = at(a);
                if v != first {
                    let values = ZeroValues { at_first: distinct[0].clone(), first, at_second: a.clone(), second: v };
                    return Err(BlaschkeError::NotExpandable { level, values: Box::new(values) });
                }
            }
            rem = self.divide(&(&rem - &RFunc::constant(first.clone()))).map_err(|_| {
                BlaschkeError::NotExpandableOrder {
                    level,
                    reason: "the remainder minus its value does not vanish to the multiplicity of each zero".into(),
                }
            })?;
            coefficients.push(first);
        }
        Ok(BAdic { coefficients, tail: rem })
    }

    /// Witness `(c, g)` with `f = c + B g`.
    pub fn cplusb_split(&self, f: &RFunc) -> Result<(GRat, RFunc), BlaschkeError> {
        let e = self.expand(f, 1)?;
        Ok((e.coefficients[0].clone(), e.tail))
    }

    pub fn is_cplusb_member(&self, f: &RFunc) -> bool {
        self.cplusb_split(f).is_ok()
    }

    /// Membership in `{ sum_{j not in K, j < k_p} a_j B^j + B^{k_p+1} g }`;
    /// an empty `K` means all of `H^inf`.
    pub fn is_hkb_member(&self, f: &RFunc, set: &KSet) -> bool {
        let Some(kp) = set.max() else {
            return true;
        };
        match self.expand(f, kp + 1) {
            Ok(e) => set.elements().iter().all(|&j| e.coefficients[j].is_zero()),
            Err(_) => false,
        }
    }
}

/// Result of a `B`-adic expansion to `J` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct BAdic {
    pub coefficients: Vec<GRat>,
    pub tail: RFunc,
}

impl BAdic {
    pub fn levels(&self) -> usize {
        self.coefficients.len()
    }

    pub fn reconstruct(&self, b: &Blaschke) -> RFunc {
        self.coefficients
            .iter()
            .rev()
            .fold(self.tail.clone(), |acc, c| &RFunc::constant(c.clone()) + &(b.as_rfunc() * &acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(zs: &[(i64, i64)]) -> Blaschke {
        Blaschke::new(zs.iter().map(|&(n, d)| GRat::ratio(n, d)).collect()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let origin = b(&[(0, 1)]);
        assert!((origin.eval(Complex64::new(0.3, 0.0)).unwrap() - 0.3).norm() < 1e-15);
        let half = b(&[(1, 2)]);
        assert!(half.eval(Complex64::new(0.5, 0.0)).unwrap().norm() < 1e-15);
        assert!((half.eval(Complex64::new(1.0, 0.0)).unwrap().norm() - 1.0).abs() < 1e-9);
        assert!(half.eval(Complex64::new(1.1, 0.0)).is_err());
    }

    #[test]
    fn rfunc_form_matches_eval() {
        let bb = Blaschke::new(vec![GRat::complex(1, 3, -1, 4), GRat::zero(), GRat::ratio(-1, 2)]).unwrap();
        for k in 0..16 {
            let z = Complex64::from_polar(0.9, k as f64 * 0.4);
            assert!((bb.eval(z).unwrap() - bb.as_rfunc().eval(z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_zeros() {
        assert!(matches!(Blaschke::new(vec![GRat::one()]), Err(BlaschkeError::ZeroOutsideDisk(_))));
        assert!(matches!(Blaschke::new(vec![]), Err(BlaschkeError::NoZeros)));
        assert!(serde_json::from_str::<Blaschke>(r#"{"zeros":[["3/5","4/5"]]}"#).is_err());
        let ok: Blaschke = serde_json::from_str(r#"{"zeros":[["1/2","0"]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&ok).unwrap(), r#"{"zeros":[["1/2","0"]]}"#);
    }

    #[test]
    fn division_examples() {
        let origin = b(&[(0, 1)]);
        assert_eq!(origin.divide(&RFunc::from_ints(&[0, 0, 0, 1])).unwrap(), RFunc::from_ints(&[0, 0, 1]));
        let half = b(&[(1, 2)]);
        let f = RFunc::from_poly(Poly::new(vec![GRat::ratio(1, 2), GRat::from_int(-1)]));
        let g = half.divide(&f).unwrap();
        assert_eq!(g, RFunc::from_poly(Poly::new(vec![GRat::one(), GRat::ratio(-1, 2)])));
        assert!(matches!(origin.divide(&RFunc::one()), Err(BlaschkeError::NotDivisible(_))));
        // multiplicity: z^2 does not divide z
        assert!(Blaschke::z_power(2).divide(&RFunc::z()).is_err());
    }

    #[test]
    fn expansion_examples() {
        let origin = b(&[(0, 1)]);
        let e = origin.expand(&RFunc::from_ints(&[3, 0, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(e.coefficients, vec![GRat::from_int(3), GRat::zero()]);
        assert_eq!(e.tail, RFunc::from_ints(&[0, 0, 0, 1]));
        let e = origin.expand(&RFunc::from_ints(&[0, 0, 1]), 2).unwrap();
        assert_eq!(e.tail, RFunc::one());
        let pm = b(&[(1, 2), (-1, 2)]);
        assert!(matches!(pm.expand(&RFunc::z(), 1), Err(BlaschkeError::NotExpandable { level: 0, .. })));
        assert!(origin.expand(&RFunc::z(), 65).is_err());
    }

    #[test]
    fn membership_examples() {
        let origin = b(&[(0, 1)]);
        let (c, g) = origin.cplusb_split(&RFunc::from_ints(&[2, 1, 1])).unwrap();
        assert_eq!((c, g), (GRat::from_int(2), RFunc::from_ints(&[1, 1])));
        assert!(!b(&[(1, 2), (-1, 2)]).is_cplusb_member(&RFunc::z()));
        assert_eq!(origin.cplusb_split(&RFunc::zero()).unwrap(), (GRat::zero(), RFunc::zero()));
        let k1 = KSet::new(vec![1]).unwrap();
        assert!(origin.is_hkb_member(&RFunc::from_ints(&[5, 0, 1, 1]), &k1));
        assert!(!origin.is_hkb_member(&RFunc::z(), &k1));
        assert!(b(&[(1, 3), (1, 3)]).is_hkb_member(&RFunc::zero(), &KSet::new(vec![1, 2, 5]).unwrap()));
    }

    #[test]
    fn order_dividing_counts_powers() {
        let origin = b(&[(0, 1)]);
        assert_eq!(origin.order_dividing(&RFunc::from_ints(&[0, 0, 0, 1, 1]), 64), 3);
        assert_eq!(origin.order_dividing(&RFunc::zero(), 64), 64);
        let half = b(&[(1, 2)]);
        assert_eq!(half.order_dividing(&half.pow(2), 64), 2);
    }
}
