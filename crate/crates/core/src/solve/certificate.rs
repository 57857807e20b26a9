use serde::{Deserialize, Serialize};

use super::{Algebra, BaseSource, KernelCheck, Solution};
use crate::ring::{sup_norm_estimate, GridSpec, RFunc, VecFn};

/// Allowed excess of the measured norm over its bound.
pub const NORM_SLACK: f64 = 1e-6;

/// A solution together with its exact and measured checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "V")]
    pub v: VecFn,
    /// `V` solves `F V^T = h^target_exponent`.
    pub target_exponent: u32,
    pub residual_ok: bool,
    pub membership_ok: bool,
    pub sup_norm_v: f64,
    pub bound: f64,
    pub bound_formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stated_bound: Option<f64>,
    pub bound_ok: bool,
    pub hypothesis_margin: f64,
    pub route: String,
    #[serde(default)]
    pub kernel_checks: Vec<KernelCheck>,
    #[serde(default)]
    pub base_sources: Vec<BaseSource>,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.residual_ok && self.membership_ok && self.bound_ok && self.kernel_checks.iter().all(|c| c.holds)
    }
}

/// `F V^T - h^e` is the zero function.
pub fn residual_ok(f: &VecFn, h: &RFunc, exponent: u32, v: &VecFn) -> bool {
    f.dot(v).is_ok_and(|lhs| lhs == h.pow(exponent))
}

/// Checks `sol` against `F V^T = h^exponent` and the algebra, and measures
/// `||V||` and the bound on `norm_grid`.
pub fn certify(
    f: &VecFn,
    h: &RFunc,
    exponent: u32,
    algebra: &Algebra,
    sol: Solution,
    hypothesis_margin: f64,
    norm_grid: &GridSpec,
) -> Certificate {
    let sup = sup_norm_estimate(&sol.v, norm_grid);
    let bound = sol.bound.value(norm_grid);
    Certificate {
        residual_ok: residual_ok(f, h, exponent, &sol.v),
        membership_ok: algebra.contains_all(&sol.v),
        sup_norm_v: sup,
        bound,
        bound_formula: sol.bound.formula.clone(),
        stated_bound: sol.bound.stated_value(norm_grid),
        bound_ok: sup <= bound + NORM_SLACK,
        hypothesis_margin,
        route: sol.route,
        kernel_checks: sol.kernel_checks,
        base_sources: sol.base_sources,
        target_exponent: exponent,
        v: sol.v,
    }
}
