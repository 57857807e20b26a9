//! Solutions of `F V^T = h` inside subalgebras of `H^inf`, with exact
//! residual and membership checks and grid-measured norm certificates.
//!
//! Every construction starts from some `H^inf` solution `G` (supplied with
//! the instance, cached, or produced by [`bezout_oracle`]) and corrects it by
//! terms of the form `Q_F X`, which never change `F V^T`.

mod certificate;
mod cplusb;
mod hk;
mod hkb;
mod hypothesis;
mod instance;
mod oracle;
mod psi;
mod wolff;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blaschke::BlaschkeError;
use crate::koszul::KoszulError;
use crate::kset::{KSet, KSetError};
use crate::ring::{sup_norm_estimate, GridSpec, RFunc, RingError, VecFn};

pub use certificate::{certify, residual_ok, Certificate, NORM_SLACK};
pub use cplusb::cplusb_solve;
pub use hk::{hk_solve, hk_solve_zero};
pub use hkb::{hkb_solve, hkb_solve_zero};
pub use hypothesis::{hypothesis_check, HypothesisForm, HypothesisReport, FF_SLACK, RADICAL_MAX_M};
pub use instance::{Algebra, Instance};
pub use oracle::bezout_oracle;
pub use psi::PsiFunction;
pub use wolff::{radical_witness, solve_instance, solve_target, Mode, Outcome, RadicalWitness, MAX_RADICAL_EXPONENT};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("input error: {0}")]
    Input(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("hypothesis check failed: {}", .0.diagnostic())]
    HypothesisFailed(Box<HypothesisReport>),
    #[error("K = {set} does not define an algebra: {j} and {k} lie outside K but {j} + {k} lies in it")]
    InvalidK { set: KSet, j: usize, k: usize },
    #[error("not in the ideal: {0}")]
    NotInIdeal(String),
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("{0}; use the vanishing-at-zero solver")]
    Redirect(String),
    #[error(
        "no construction applies: shift {shift} is below k_p = {kp} and K - {shift} = {shifted} is not an algebra"
    )]
    NeitherCase { shift: usize, kp: usize, shifted: KSet },
    #[error("no construction applies: {0}")]
    NoConstruction(String),
    #[error("no exponent q <= {0} passes the radical test")]
    NoExponent(u32),
    #[error("recursion depth limit {0} reached")]
    DepthExceeded(usize),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Blaschke(#[from] BlaschkeError),
    #[error(transparent)]
    KSet(#[from] KSetError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

impl SolveError {
    /// Refusals where the available constructions do not cover the instance,
    /// as opposed to bad input or a failed check.
    pub fn is_refusal(&self) -> bool {
        matches!(self, SolveError::NeitherCase { .. } | SolveError::NoConstruction(_))
    }
}

/// Where a base solution came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSource {
    User,
    Cache,
    Oracle,
}

/// `F(0) g_k^T = 0` at one step of the `H_K` induction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub k: usize,
    pub holds: bool,
}

/// Norm bound `factor * ||base||_grid + additive`, valid pointwise when
/// `||F(z)|| <= 1`, so the grid sup of the solution never exceeds it.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub base: VecFn,
    pub factor: f64,
    pub additive: f64,
    pub formula: String,
    /// Factor of the alternative `(1 + 1/||c||) ||G||` form, when one exists.
    pub stated_factor: Option<f64>,
}

impl Bound {
    pub fn trivial(base: VecFn, formula: &str) -> Self {
        Bound { base, factor: 1.0, additive: 0.0, formula: formula.into(), stated_factor: None }
    }

    pub fn value(&self, grid: &GridSpec) -> f64 {
        self.factor * sup_norm_estimate(&self.base, grid) + self.additive
    }

    pub fn stated_value(&self, grid: &GridSpec) -> Option<f64> {
        self.stated_factor.map(|s| s * sup_norm_estimate(&self.base, grid) + self.additive)
    }

    fn lift(self, d: usize) -> Self {
        Bound { base: self.base.map(|f| f.inflate(d)), ..self }
    }
}

/// A constructed solution before certification.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub v: VecFn,
    pub route: String,
    pub bound: Bound,
    pub kernel_checks: Vec<KernelCheck>,
    pub base_sources: Vec<BaseSource>,
}

impl Solution {
    fn zero(n: usize) -> Self {
        Solution {
            v: VecFn::zeros(n),
            route: "h = 0".into(),
            bound: Bound::trivial(VecFn::zeros(n), "0"),
            kernel_checks: Vec::new(),
            base_sources: Vec::new(),
        }
    }
}

/// Base-solution provider and recursion guard shared by one solve.
#[derive(Debug, Clone)]
pub struct SolveContext {
    user: Option<(VecFn, RFunc, VecFn)>,
    cache: HashMap<(VecFn, RFunc), VecFn>,
    depth: usize,
    max_depth: usize,
    sources: Vec<BaseSource>,
}

impl Default for SolveContext {
    fn default() -> Self {
        SolveContext::new(None, 8)
    }
}

impl SolveContext {
    /// `user`: a known `(F, h, G)` with `F G^T = h`.
    pub fn new(user: Option<(VecFn, RFunc, VecFn)>, max_depth: usize) -> Self {
        SolveContext { user, cache: HashMap::new(), depth: 0, max_depth, sources: Vec::new() }
    }

    pub fn for_instance(inst: &Instance) -> Self {
        let (k_len, j1) = match &inst.algebra {
            Algebra::HK(k) => (k.len(), inst.f.valuation().unwrap_or(0)),
            Algebra::HKInfinite { gaps, .. } => (gaps.len(), inst.f.valuation().unwrap_or(0)),
            Algebra::HKB(k, b) => {
                let j1 = inst.f.iter().map(|e| b.order_dividing(e, crate::blaschke::MAX_LEVELS)).min().unwrap_or(0);
                (k.len(), j1)
            }
            _ => (0, 1),
        };
        let user = inst.base_solution.clone().map(|g| (inst.f.clone(), inst.h.clone(), g));
        SolveContext::new(user, k_len + j1 + 4)
    }

    fn user_match(&self, f: &VecFn, target: &RFunc) -> Option<VecFn> {
        let (uf, uh, ug) = self.user.as_ref()?;
        if uf != f {
            return None;
        }
        if uh == target {
            return Some(ug.clone());
        }
        // powers h^e of the supplied target: h^(e-1) G
        let mut power = uh.clone();
        for _ in 2..=8 {
            let next = &power * uh;
            if &next == target {
                return Some(ug.mul_fn(&power));
            }
            power = next;
        }
        None
    }

    /// Some `G` in `H^inf` with `F G^T = target`: user-supplied, then cached,
    /// then from the oracle.
    pub fn base_solution(&mut self, f: &VecFn, target: &RFunc) -> Result<VecFn, SolveError> {
        if let Some(g) = self.user_match(f, target) {
            self.sources.push(BaseSource::User);
            return Ok(g);
        }
        let key = (f.clone(), target.clone());
        if let Some(g) = self.cache.get(&key) {
            self.sources.push(BaseSource::Cache);
            return Ok(g.clone());
        }
        let g = bezout_oracle(f, target)?;
        self.cache.insert(key, g.clone());
        self.sources.push(BaseSource::Oracle);
        Ok(g)
    }

    fn enter(&mut self) -> Result<(), SolveError> {
        self.depth += 1;
        if self.depth > self.max_depth {
            return Err(SolveError::DepthExceeded(self.max_depth));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn take_sources(&mut self) -> Vec<BaseSource> {
        std::mem::take(&mut self.sources)
    }
}

/// `sqrt(sum |c_i|^2)` in floating point.
fn l2(cs: &[crate::ring::GRat]) -> f64 {
    crate::ring::rat_to_f64(&crate::ring::norm_sqr(cs)).sqrt()
}
