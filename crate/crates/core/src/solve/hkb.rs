//! Solutions in `H_{K(B)} = { sum_{j not in K, j < k_p} a_j B^j + B^(k_p+1) g }`.

use super::cplusb::rank_one_correction;
use super::{l2, Bound, Solution, SolveContext, SolveError};
use crate::blaschke::{Blaschke, MAX_LEVELS};
use crate::kset::{is_algebra_set, k_minus, KSet};
use crate::ring::{GRat, RFunc, VecFn};

fn require_members(f: &VecFn, h: &RFunc, k: &KSet, b: &Blaschke) -> Result<(), SolveError> {
    if let Some(i) = f.iter().position(|e| !b.is_hkb_member(e, k)) {
        return Err(SolveError::Hypothesis(format!("F entry {} is not in H_K(B) for K = {k}", i + 1)));
    }
    if !b.is_hkb_member(h, k) {
        return Err(SolveError::Hypothesis(format!("h is not in H_K(B) for K = {k}")));
    }
    Ok(())
}

fn require_algebra(k: &KSet) -> Result<(), SolveError> {
    match is_algebra_set(k).counterexample() {
        Some((a, c)) => Err(SolveError::InvalidK { set: k.clone(), j: a, k: c }),
        None => Ok(()),
    }
}

/// `F V^T = target` with `V` in `H_{K(B)}`, for a nonzero `B`-adic constant
/// term `F_0`.
///
/// The correction `V = G + Q_F Q_G^T conj(F_0)/|F_0|^2` maps solutions in
/// `H_{K_{p-1}(B)}` to solutions in `H_{K(B)}`, so it is applied once per
/// element of `K`, starting from an `H^inf` solution.
pub fn hkb_solve(
    ctx: &mut SolveContext,
    f: &VecFn,
    target: &RFunc,
    k: &KSet,
    b: &Blaschke,
) -> Result<Solution, SolveError> {
    require_algebra(k)?;
    if target.is_zero() {
        return Ok(Solution::zero(f.len()));
    }
    require_members(f, target, k, b)?;
    let f0 = super::cplusb::constant_terms(f, b)?;
    if f0.iter().all(GRat::is_zero) {
        return Err(SolveError::Redirect("B-adic constant term F_0 = 0".into()));
    }
    let mut g = ctx.base_solution(f, target)?;
    let mut last_input = g.clone();
    for _ in k.elements() {
        last_input = g.clone();
        g = rank_one_correction(f, &g, &f0)?;
    }
    let norm = l2(&f0);
    let bound = if k.is_empty() {
        Bound::trivial(g.clone(), "|G|")
    } else {
        Bound {
            base: last_input,
            factor: 1.0 + 1.0 / (norm * norm),
            additive: 0.0,
            formula: format!("(1 + 1/|F_0|^2) |G|, |F_0| = {norm:.12}"),
            stated_factor: Some(1.0 + 1.0 / norm),
        }
    };
    Ok(Solution {
        v: g,
        route: format!("F_0 != 0: {} rank-one correction(s) over K = {k}", k.len()),
        bound,
        kernel_checks: Vec::new(),
        base_sources: ctx.take_sources(),
    })
}

/// `F V^T = target` with `V` in `H_{K(B)}` when `F = B^j1 F_a` and `F_a` has
/// a nonzero constant term: `V = B^j1 G_a` with `F_a G_a^T = h / B^(2 j1)`.
pub fn hkb_solve_zero(
    ctx: &mut SolveContext,
    f: &VecFn,
    target: &RFunc,
    k: &KSet,
    b: &Blaschke,
    j1: Option<usize>,
) -> Result<Solution, SolveError> {
    require_algebra(k)?;
    if target.is_zero() {
        return Ok(Solution::zero(f.len()));
    }
    require_members(f, target, k, b)?;
    let order = f.iter().map(|e| b.order_dividing(e, MAX_LEVELS)).min().unwrap_or(0);
    if order >= MAX_LEVELS {
        return Err(SolveError::NotInIdeal("F = 0".into()));
    }
    let j1 = match j1 {
        Some(j) if j != order => {
            return Err(SolveError::Input(format!(
                "B^{j} is not the largest power of B dividing F (that is B^{order})"
            )))
        }
        _ => order,
    };
    if j1 == 0 {
        return hkb_solve(ctx, f, target, k, b);
    }
    let divide_times = |mut x: RFunc, times: usize| -> Result<RFunc, SolveError> {
        for _ in 0..times {
            x = b.divide(&x)?;
        }
        Ok(x)
    };
    let fa = f.try_map(|e| divide_times(e.clone(), j1))?;
    let ha = divide_times(target.clone(), 2 * j1)
        .map_err(|_| SolveError::Hypothesis(format!("B^{} does not divide h", 2 * j1)))?;
    let bj = b.pow(j1);
    let kp = k.max().unwrap_or(0);
    if j1 > kp {
        let g = ctx.base_solution(&fa, &ha)?;
        return Ok(Solution {
            v: g.mul_fn(&bj),
            route: format!("F = B^{j1} F_a, j1 > k_p: V = B^{j1} G_a"),
            bound: Bound::trivial(g, "|G_a|"),
            kernel_checks: Vec::new(),
            base_sources: ctx.take_sources(),
        });
    }
    let shifted = k_minus(k, j1)?;
    if !is_algebra_set(&shifted).is_algebra() {
        return Err(SolveError::NeitherCase { shift: j1, kp, shifted });
    }
    if !b.is_hkb_member(&ha, &shifted) {
        return Err(SolveError::NoConstruction(format!(
            "h / B^{} is not in H_(K-{j1})(B), so no V = B^{j1} G with G in that algebra solves the problem",
            2 * j1
        )));
    }
    ctx.enter()?;
    let inner = hkb_solve(ctx, &fa, &ha, &shifted, b);
    ctx.leave();
    let inner = inner?;
    Ok(Solution {
        v: inner.v.mul_fn(&bj),
        route: format!("F = B^{j1} F_a, K - {j1} = {shifted} an algebra: V = B^{j1} G_a; {}", inner.route),
        bound: Bound::trivial(inner.v, "|G_a|"),
        kernel_checks: Vec::new(),
        base_sources: [inner.base_sources, ctx.take_sources()].concat(),
    })
}
