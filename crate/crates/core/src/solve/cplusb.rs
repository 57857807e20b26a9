//! Solutions in `C + B H^inf`.

use super::{l2, Bound, Solution, SolveContext, SolveError};
use crate::blaschke::Blaschke;
use crate::koszul::{q_apply_vecfn, q_transpose_apply_const};
use crate::ring::{GRat, RFunc, VecFn};

/// `V = G + Q_F Q_G^T conj(c) / ||c||^2`. When `F - c` vanishes on `Z(B)`
/// this equals `h conj(c)/||c||^2 - G ((F - c) conj(c)^T)/||c||^2`.
pub(crate) fn rank_one_correction(f: &VecFn, g: &VecFn, c: &[GRat]) -> Result<VecFn, SolveError> {
    let n2 = crate::ring::norm_sqr(c);
    let scale = GRat::real(num::BigRational::from_integer(1.into()) / n2);
    let v: Vec<GRat> = c.iter().map(|x| &x.conj() * &scale).collect();
    let x = q_transpose_apply_const(g, &v)?;
    let correction = q_apply_vecfn(f, &x)?;
    Ok(g.add(&correction)?)
}

/// Common value of each entry of `F` on the zero set of `B`.
pub(crate) fn constant_terms(f: &VecFn, b: &Blaschke) -> Result<Vec<GRat>, SolveError> {
    f.iter()
        .enumerate()
        .map(|(i, e)| {
            b.cplusb_split(e)
                .map(|(c, _)| c)
                .map_err(|err| SolveError::Hypothesis(format!("F entry {} is not in C + B H^inf: {err}", i + 1)))
        })
        .collect()
}

/// `F V^T = target` with every `v_i` in `C + B H^inf`.
pub fn cplusb_solve(ctx: &mut SolveContext, f: &VecFn, target: &RFunc, b: &Blaschke) -> Result<Solution, SolveError> {
    if target.is_zero() {
        return Ok(Solution::zero(f.len()));
    }
    let fc = constant_terms(f, b)?;
    if fc.iter().any(|c| !c.is_zero()) {
        let g = ctx.base_solution(f, target)?;
        let v = rank_one_correction(f, &g, &fc)?;
        let norm = l2(&fc);
        return Ok(Solution {
            v,
            route: "F_c != 0: V = G + Q_F Q_G^T conj(F_c)/|F_c|^2".into(),
            bound: Bound {
                base: g,
                factor: 1.0 + 1.0 / (norm * norm),
                additive: 0.0,
                formula: format!("(1 + 1/|F_c|^2) |G|, |F_c| = {norm:.12}"),
                stated_factor: Some(1.0 + 1.0 / norm),
            },
            kernel_checks: Vec::new(),
            base_sources: ctx.take_sources(),
        });
    }
    // F = B F_B, so h vanishes on Z(B) and B^2 divides h
    let (hc, _) =
        b.cplusb_split(target).map_err(|e| SolveError::Hypothesis(format!("h is not in C + B H^inf: {e}")))?;
    if !hc.is_zero() {
        return Err(SolveError::Hypothesis(format!("F vanishes on Z(B) but h takes the value {hc} there")));
    }
    let fb = f.try_map(|e| b.divide(e))?;
    let h1 = b
        .divide(target)
        .and_then(|t| b.divide(&t))
        .map_err(|_| SolveError::Hypothesis("F vanishes on Z(B) but B^2 does not divide h".into()))?;
    let g1 = ctx.base_solution(&fb, &h1)?;
    let v = g1.mul_fn(b.as_rfunc());
    Ok(Solution {
        v,
        route: "F_c = 0: V = B G_1 with (F/B) G_1^T = h/B^2".into(),
        bound: Bound::trivial(g1, "|G_1|"),
        kernel_checks: Vec::new(),
        base_sources: ctx.take_sources(),
    })
}
