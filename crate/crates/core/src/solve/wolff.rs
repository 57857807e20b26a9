//! Dispatch over algebras and hypothesis modes: the weighted form solves for
//! `h`, the cube form for `h^3`, and the radical form for some `h^(q+L)`.

use serde::{Deserialize, Serialize};

use super::hk::hk_infinite_solve;
use super::{
    certify, cplusb_solve, hk_solve, hk_solve_zero, hkb_solve, hkb_solve_zero, hypothesis_check, Algebra, Bound,
    Certificate, HypothesisForm, HypothesisReport, Instance, Solution, SolveContext, SolveError,
};
use crate::ring::{sup_abs_estimate, GRat, GridSpec, RFunc, VecFn};

/// Largest `q` tried by [`radical_witness`].
pub const MAX_RADICAL_EXPONENT: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `F F* psi(F F*) >= |h|`, solve for `h`.
    Treil,
    /// `(F F*)^(1/2) >= |h|`, solve for `h^3`.
    Wolff3,
    /// `M (F F*)^(1/2) >= |h^q|`, solve for a power of `h`.
    Radical,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Treil => "treil",
            Mode::Wolff3 => "wolff3",
            Mode::Radical => "radical",
        }
    }
}

/// `F V^T = target` in `algebra`, choosing the construction by whether `F`
/// vanishes at `0` or on `Z(B)`.
pub fn solve_target(
    ctx: &mut SolveContext,
    algebra: &Algebra,
    f: &VecFn,
    target: &RFunc,
) -> Result<Solution, SolveError> {
    match algebra {
        Algebra::Hinf => {
            if target.is_zero() {
                return Ok(Solution::zero(f.len()));
            }
            let g = ctx.base_solution(f, target)?;
            Ok(Solution {
                v: g.clone(),
                route: "H^inf: V = G".into(),
                bound: Bound::trivial(g, "|G|"),
                kernel_checks: Vec::new(),
                base_sources: ctx.take_sources(),
            })
        }
        Algebra::CPlusB(b) => cplusb_solve(ctx, f, target, b),
        Algebra::HK(k) => {
            if f.value_at_zero().iter().all(GRat::is_zero) {
                hk_solve_zero(ctx, f, target, k, None)
            } else {
                hk_solve(ctx, f, target, k)
            }
        }
        Algebra::HKInfinite { data, gaps, .. } => hk_infinite_solve(ctx, f, target, data, gaps),
        Algebra::HKB(k, b) => {
            let f0 = super::cplusb::constant_terms(f, b)?;
            if f0.iter().all(GRat::is_zero) {
                hkb_solve_zero(ctx, f, target, k, b, None)
            } else {
                hkb_solve(ctx, f, target, k, b)
            }
        }
    }
}

/// A power `h^(q+L)` in the ideal, with `U` in the algebra solving
/// `F U^T = h^(q+L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadicalWitness {
    pub q: u32,
    pub l: u32,
    pub solution: Solution,
    pub report: HypothesisReport,
}

impl RadicalWitness {
    pub fn exponent(&self) -> u32 {
        self.q + self.l
    }
}

fn retryable(e: &SolveError) -> bool {
    matches!(e, SolveError::NotInIdeal(_) | SolveError::Hypothesis(_))
}

/// Searches `q = 1..=8` for the first exponent with
/// `M (F F*)^(1/2) >= |h^q|` on `grid` (`M = 1000`) and `h^q` in the
/// `H^inf` ideal, then builds the witness.
///
/// For `H_K` with `F(0) = 0` an `H^inf` solution `G` of `F G^T = h^q` is
/// lifted to `U = h^L G` with `L` the least integer making the order of
/// `h^L` at `0` exceed `k_p`.
pub fn radical_witness(
    ctx: &mut SolveContext,
    algebra: &Algebra,
    f: &VecFn,
    h: &RFunc,
    grid: &GridSpec,
    norm_grid: &GridSpec,
) -> Result<RadicalWitness, SolveError> {
    if h.is_zero() {
        let report = hypothesis_check(f, h, &HypothesisForm::Radical { q: 1 }, grid);
        return Ok(RadicalWitness { q: 1, l: 0, solution: Solution::zero(f.len()), report });
    }
    let vanishing_hk = match algebra {
        Algebra::HK(k) if !k.is_empty() && f.value_at_zero().iter().all(GRat::is_zero) => Some(k),
        _ => None,
    };
    for q in 1..=MAX_RADICAL_EXPONENT {
        let report = hypothesis_check(f, h, &HypothesisForm::Radical { q }, grid);
        if !report.ok {
            continue;
        }
        let hq = h.pow(q);
        let Some(k) = vanishing_hk else {
            match solve_target(ctx, algebra, f, &hq) {
                Ok(solution) => return Ok(RadicalWitness { q, l: 0, solution, report }),
                Err(e) if retryable(&e) => continue,
                Err(e) => return Err(e),
            }
        };
        let g = match ctx.base_solution(f, &hq) {
            Ok(g) => g,
            Err(e) if retryable(&e) => continue,
            Err(e) => return Err(e),
        };
        let kp = k.max().expect("non-empty K");
        let m = f.valuation().expect("F(0) = 0 and h^q in the ideal force F != 0");
        let ord = h.valuation().expect("h != 0");
        if ord == 0 {
            continue;
        }
        // h = z^m h_m gives ord >= m; either way ord(h^L) = L ord > k_p
        let base_order = if ord >= m { m } else { ord };
        let l = (kp / base_order + 1) as u32;
        let hl = h.pow(l);
        let sup_h = sup_abs_estimate(h, norm_grid);
        let solution = Solution {
            v: g.mul_fn(&hl),
            route: format!("F(0) = 0, m = {m}: U = h^{l} G with F G^T = h^{q}, order of h^{l} at 0 above k_p = {kp}"),
            bound: Bound {
                base: g,
                factor: sup_h.powi(l as i32),
                additive: 0.0,
                formula: format!("sup|h|^{l} |G|, sup|h| = {sup_h:.12}"),
                stated_factor: None,
            },
            kernel_checks: Vec::new(),
            base_sources: ctx.take_sources(),
        };
        return Ok(RadicalWitness { q, l, solution, report });
    }
    Err(SolveError::NoExponent(MAX_RADICAL_EXPONENT))
}

/// A certified solve of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub mode: Mode,
    pub hypothesis: HypothesisReport,
    pub certificate: Certificate,
    pub radical_q: Option<u32>,
    pub radical_l: Option<u32>,
}

/// Validates the instance, checks the mode's hypothesis on `grid`, solves,
/// and certifies norms on `norm_grid`.
pub fn solve_instance(
    inst: &Instance,
    mode: Mode,
    grid: &GridSpec,
    norm_grid: &GridSpec,
) -> Result<Outcome, SolveError> {
    inst.validate()?;
    let mut ctx = SolveContext::for_instance(inst);
    let (f, h) = (&inst.f, &inst.h);
    let (report, solution, exponent, q, l) = match mode {
        Mode::Treil | Mode::Wolff3 => {
            let (form, exponent) = match mode {
                Mode::Treil => (HypothesisForm::Weighted(inst.psi.clone()), 1),
                _ => (HypothesisForm::Cube, 3),
            };
            let report = hypothesis_check(f, h, &form, grid);
            if !report.ok {
                return Err(SolveError::HypothesisFailed(Box::new(report)));
            }
            let solution = solve_target(&mut ctx, &inst.algebra, f, &h.pow(exponent))?;
            (report, solution, exponent, None, None)
        }
        Mode::Radical => {
            let w = radical_witness(&mut ctx, &inst.algebra, f, h, grid, norm_grid)?;
            let e = w.exponent();
            (w.report, w.solution, e, Some(w.q), Some(w.l))
        }
    };
    let certificate = certify(f, h, exponent, &inst.algebra, solution, report.margin, norm_grid);
    Ok(Outcome { mode, hypothesis: report, certificate, radical_q: q, radical_l: l })
}
