//! Finite tuples of bounded analytic functions, written as row vectors.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::{GRat, RFunc, RingError};

/// A row vector `F = (f_1, ..., f_n)` with `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<RFunc>", into = "Vec<RFunc>")]
pub struct VecFn {
    entries: Vec<RFunc>,
}

impl TryFrom<Vec<RFunc>> for VecFn {
    type Error = RingError;
    fn try_from(entries: Vec<RFunc>) -> Result<Self, RingError> {
        VecFn::new(entries)
    }
}

impl From<VecFn> for Vec<RFunc> {
    fn from(v: VecFn) -> Self {
        v.entries
    }
}

impl VecFn {
    pub fn new(entries: Vec<RFunc>) -> Result<Self, RingError> {
        if entries.is_empty() {
            return Err(RingError::Dimension("a function tuple needs at least one entry".into()));
        }
        Ok(VecFn { entries })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "a function tuple needs at least one entry");
        VecFn { entries: vec![RFunc::zero(); n] }
    }

    /// Constant tuple.
    pub fn constants(cs: &[GRat]) -> Self {
        VecFn::new(cs.iter().cloned().map(RFunc::constant).collect()).expect("non-empty constant tuple")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[RFunc] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RFunc> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RFunc::is_zero)
    }

    fn check_len(&self, other: &VecFn) -> Result<(), RingError> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(RingError::Dimension(format!("tuple lengths {} and {} differ", self.len(), other.len())))
        }
    }

    /// `F G^T = sum f_i g_i` (no conjugation).
    pub fn dot(&self, other: &VecFn) -> Result<RFunc, RingError> {
        self.check_len(other)?;
        Ok(self.entries.iter().zip(&other.entries).fold(RFunc::zero(), |acc, (f, g)| &acc + &(f * g)))
    }

    pub fn add(&self, other: &VecFn) -> Result<VecFn, RingError> {
        self.check_len(other)?;
        Ok(self.zip_map(other, |f, g| f + g))
    }

    pub fn sub(&self, other: &VecFn) -> Result<VecFn, RingError> {
        self.check_len(other)?;
        Ok(self.zip_map(other, |f, g| f - g))
    }

    fn zip_map(&self, other: &VecFn, op: impl Fn(&RFunc, &RFunc) -> RFunc) -> VecFn {
        VecFn { entries: self.entries.iter().zip(&other.entries).map(|(f, g)| op(f, g)).collect() }
    }

    pub fn map(&self, op: impl Fn(&RFunc) -> RFunc) -> VecFn {
        VecFn { entries: self.entries.iter().map(op).collect() }
    }

    pub fn try_map<E>(&self, op: impl Fn(&RFunc) -> Result<RFunc, E>) -> Result<VecFn, E> {
        Ok(VecFn { entries: self.entries.iter().map(op).collect::<Result<_, _>>()? })
    }

    /// Multiply every entry by the scalar function `g`.
    pub fn mul_fn(&self, g: &RFunc) -> VecFn {
        self.map(|f| f * g)
    }

    pub fn scale(&self, c: &GRat) -> VecFn {
        self.map(|f| f.scale(c))
    }

    pub fn shift_up(&self, k: usize) -> VecFn {
        self.map(|f| f.shift_up(k))
    }

    /// `F(0)`.
    pub fn value_at_zero(&self) -> Vec<GRat> {
        self.entries.iter().map(RFunc::value_at_zero).collect()
    }

    /// Entry-wise `k`-th Maclaurin coefficient, `F^(k)(0) / k!`.
    pub fn taylor_coeff(&self, k: usize) -> Vec<GRat> {
        self.entries.iter().map(|f| f.taylor_coeff(k)).collect()
    }

    /// Common order of vanishing at the origin; `None` if `F = 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.entries.iter().filter_map(RFunc::valuation).min()
    }
}

impl Index<usize> for VecFn {
    type Output = RFunc;
    fn index(&self, i: usize) -> &RFunc {
        &self.entries[i]
    }
}

impl<'a> IntoIterator for &'a VecFn {
    type Item = &'a RFunc;
    type IntoIter = std::slice::Iter<'a, RFunc>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl fmt::Debug for VecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `F^(k)(0)`: the `k`-th derivative at the origin, entry-wise.
pub fn derivative_at_zero(f: &VecFn, k: usize) -> Vec<GRat> {
    let fact = (1..=k as i64).fold(GRat::one(), |acc, i| &acc * &GRat::from_int(i));
    f.taylor_coeff(k).iter().map(|c| c * &fact).collect()
}

/// `sum |c_i|^2`, exact.
pub fn norm_sqr(cs: &[GRat]) -> num::BigRational {
    cs.iter().fold(num::BigRational::default(), |acc, c| acc + c.norm_sqr())
}
