//! Exact scalar, polynomial, and rational-function arithmetic on the closed
//! unit disk.
//!
//! Bounded analytic functions are modelled by [`RFunc`]: rational functions
//! over the Gaussian rationals whose poles lie strictly outside the closed
//! disk. Every algebraic operation is exact; only evaluation and sup-norm
//! estimation use floating point.

mod grat;
mod grid;
mod poly;
mod rfunc;
pub mod roots;
mod vecfn;

use thiserror::Error;

pub(crate) use grat::rat_to_f64;
pub use grat::{parse_rational, GRat};
pub use grid::{sup_abs_estimate, sup_norm_estimate, GridSpec, DEFAULT_POINTS_PER_CIRCLE, MIN_GRID_POINTS};
pub use poly::Poly;
pub use rfunc::{FloatRFunc, RFunc, DISK_SLACK};
pub use roots::den_admissible;
pub use vecfn::{derivative_at_zero, norm_sqr, VecFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no root set")]
    ZeroPolynomial,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("inadmissible function: {0}")]
    Inadmissible(String),
    #[error("indeterminate root location: {0}")]
    Indeterminate(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Commutative ring operations shared by constant and function-valued
/// coefficients, so the Koszul matrices can be built over either.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn plus(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn minus(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn times(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn negated(&self) -> Self {
                -self
            }
        }
    };
}
impl_scalar!(GRat);
impl_scalar!(RFunc);
