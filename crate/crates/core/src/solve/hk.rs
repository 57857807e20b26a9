//! Solutions in `H_K = { f : f^(j)(0) = 0, j in K }`.

use super::{l2, Bound, KernelCheck, Solution, SolveContext, SolveError};
use crate::koszul::{q_apply_vecfn, q_star_apply};
use crate::kset::{is_algebra_set, is_hk_member, k_minus, reduce_to_finite, KSet, SemigroupData};
use crate::ring::{norm_sqr, GRat, RFunc, VecFn};

fn require_algebra(k: &KSet) -> Result<(), SolveError> {
    match is_algebra_set(k).counterexample() {
        Some((a, b)) => Err(SolveError::InvalidK { set: k.clone(), j: a, k: b }),
        None => Ok(()),
    }
}

fn require_members(f: &VecFn, h: &RFunc, k: &KSet) -> Result<(), SolveError> {
    if let Some(i) = f.iter().position(|e| !is_hk_member(e, k)) {
        return Err(SolveError::Hypothesis(format!("F entry {} is not in H_K for K = {k}", i + 1)));
    }
    if !is_hk_member(h, k) {
        return Err(SolveError::Hypothesis(format!("h = {h} is not in H_K for K = {k}")));
    }
    Ok(())
}

/// `F V^T = target` with `V` in `H_K`, for `F(0) != 0`.
///
/// Starting from an `H^inf` solution, each `k` in `K` (ascending) is removed
/// from the Taylor support by `V = G - Q_F X` with
/// `X = Q*_{F(0)} g_k z^k / ||F(0)||^2`, `g_k` the `k`-th coefficient of `G`.
/// Before each step `F(0) g_k^T = 0` is checked exactly.
pub fn hk_solve(ctx: &mut SolveContext, f: &VecFn, target: &RFunc, k: &KSet) -> Result<Solution, SolveError> {
    require_algebra(k)?;
    if target.is_zero() {
        return Ok(Solution::zero(f.len()));
    }
    let f0 = f.value_at_zero();
    if f0.iter().all(GRat::is_zero) {
        return Err(SolveError::Redirect("F(0) = 0".into()));
    }
    require_members(f, target, k)?;
    let mut g = ctx.base_solution(f, target)?;
    let f0_norm_sqr = norm_sqr(&f0);
    let inv = GRat::real(num::BigRational::from_integer(1.into()) / &f0_norm_sqr);
    let f0_norm = crate::ring::rat_to_f64(&f0_norm_sqr).sqrt();
    let mut checks = Vec::with_capacity(k.len());
    let mut last_input = g.clone();
    let mut last_coeff_norm = 0.0;
    for &kk in k.elements() {
        last_input = g.clone();
        let gk = g.taylor_coeff(kk);
        let pairing = f0.iter().zip(&gk).fold(GRat::zero(), |acc, (a, b)| &acc + &(a * b));
        let holds = pairing.is_zero();
        checks.push(KernelCheck { k: kk, holds });
        if !holds {
            return Err(SolveError::Internal(format!("F(0) g_{kk}^T = {pairing}, expected 0")));
        }
        last_coeff_norm = l2(&gk);
        if gk.iter().all(GRat::is_zero) || f.len() < 2 {
            continue;
        }
        let w = q_star_apply(&f0, &gk, 1)?;
        let x: Vec<RFunc> = w.iter().map(|c| RFunc::monomial(c * &inv, kk)).collect();
        g = g.sub(&q_apply_vecfn(f, &x)?)?;
    }
    let (bound, route) = match k.max() {
        None => (Bound::trivial(g.clone(), "|G|"), "K empty: V = G".to_string()),
        Some(kp) => (
            Bound {
                base: last_input,
                factor: 1.0,
                additive: last_coeff_norm / f0_norm,
                formula: format!(
                    "|G| + |G^({kp})(0)|/({kp}! |F(0)|), |G^({kp})(0)|/{kp}! = {last_coeff_norm:.12}, |F(0)| = {f0_norm:.12}"
                ),
                stated_factor: None,
            },
            format!("F(0) != 0: {} correction step(s) V = G - Q_F X over K = {k}", k.len()),
        ),
    };
    Ok(Solution { v: g, route, bound, kernel_checks: checks, base_sources: ctx.take_sources() })
}

/// `F V^T = target` with `V` in `H_K`, for `F = z^m F_m`, `F_m(0) != 0`.
///
/// `V = z^m G` with `F_m G^T = h / z^(2m)`; `G` is unconstrained when
/// `m > k_p` and must lie in `H_{K-m}` otherwise, which needs `K - m` to be an
/// algebra and `h / z^(2m)` to lie in `H_{K-m}`.
pub fn hk_solve_zero(
    ctx: &mut SolveContext,
    f: &VecFn,
    target: &RFunc,
    k: &KSet,
    m: Option<usize>,
) -> Result<Solution, SolveError> {
    require_algebra(k)?;
    if target.is_zero() {
        return Ok(Solution::zero(f.len()));
    }
    let order = f.valuation().ok_or_else(|| SolveError::NotInIdeal("F = 0".into()))?;
    let m = match m {
        Some(m) if m != order => {
            return Err(SolveError::Input(format!("z^{m} is not the exact common order of F at 0 (that is {order})")))
        }
        _ => order,
    };
    if m == 0 {
        return hk_solve(ctx, f, target, k);
    }
    require_members(f, target, k)?;
    if k.contains(m) {
        return Err(SolveError::Hypothesis(format!("order {m} of F at 0 lies in K")));
    }
    let hm = target.shift_down(2 * m).map_err(|_| SolveError::Hypothesis(format!("z^{} does not divide h", 2 * m)))?;
    let fm = f.try_map(|e| e.shift_down(m))?;
    let kp = k.max().unwrap_or(0);
    if m > kp {
        let g = ctx.base_solution(&fm, &hm)?;
        return Ok(Solution {
            v: g.shift_up(m),
            route: format!("F = z^{m} F_m, m > k_p: V = z^{m} G_m"),
            bound: Bound::trivial(g, "|G_m|"),
            kernel_checks: Vec::new(),
            base_sources: ctx.take_sources(),
        });
    }
    let shifted = k_minus(k, m)?;
    if !is_algebra_set(&shifted).is_algebra() {
        return Err(SolveError::NeitherCase { shift: m, kp, shifted });
    }
    if !is_hk_member(&hm, &shifted) {
        return Err(SolveError::NoConstruction(format!(
            "h / z^{} is not in H_(K-{m}) = H_{shifted}, so no V = z^{m} G with G in H_{shifted} solves the problem",
            2 * m
        )));
    }
    ctx.enter()?;
    let inner = hk_solve(ctx, &fm, &hm, &shifted);
    ctx.leave();
    let inner = inner?;
    Ok(Solution {
        v: inner.v.shift_up(m),
        route: format!(
            "F = z^{m} F_m, K - {m} = {shifted} an algebra: V = z^{m} G_m, G_m in H_(K-{m}); {}",
            inner.route
        ),
        bound: Bound::trivial(inner.v, "|G_m|"),
        kernel_checks: inner.kernel_checks,
        base_sources: [inner.base_sources, ctx.take_sources()].concat(),
    })
}

/// `H_K` for infinite `K`: substitute `w = z^d`, solve over the finite gap
/// set, and substitute back.
pub fn hk_infinite_solve(
    ctx: &mut SolveContext,
    f: &VecFn,
    target: &RFunc,
    data: &SemigroupData,
    gaps: &KSet,
) -> Result<Solution, SolveError> {
    let d = data.d;
    let f1 = f.try_map(|e| reduce_to_finite(e, d))?;
    let h1 = reduce_to_finite(target, d)?;
    let inner = if f1.value_at_zero().iter().all(GRat::is_zero) {
        hk_solve_zero(ctx, &f1, &h1, gaps, None)?
    } else {
        hk_solve(ctx, &f1, &h1, gaps)?
    };
    Ok(Solution {
        v: inner.v.map(|e| e.inflate(d)),
        route: format!("w = z^{d}, K_1 = {gaps}: {}", inner.route),
        bound: inner.bound.lift(d),
        kernel_checks: inner.kernel_checks,
        base_sources: inner.base_sources,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vf(entries: &[&[i64]]) -> VecFn {
        VecFn::new(entries.iter().map(|cs| RFunc::from_ints(cs)).collect()).unwrap()
    }

    fn k(v: &[usize]) -> KSet {
        KSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hand_computed_step() {
        let f = vf(&[&[1, 0, 1], &[0, 0, 0, 1]]);
        let h = RFunc::from_ints(&[0, 0, 1, 0, 1]);
        let g = vf(&[&[0, 0, 1, 0, -1], &[0, 1, 0, 1]]);
        let mut ctx = SolveContext::new(Some((f.clone(), h.clone(), g)), 8);
        let s = hk_solve(&mut ctx, &f, &h, &k(&[1])).unwrap();
        assert_eq!(s.v, vf(&[&[0, 0, 1], &[0]]));
        assert_eq!(s.kernel_checks, vec![KernelCheck { k: 1, holds: true }]);
    }

    #[test]
    fn no_correction_needed() {
        let f = vf(&[&[1], &[0, 0, 1]]);
        let g = vf(&[&[1], &[0]]);
        let mut ctx = SolveContext::new(Some((f.clone(), RFunc::one(), g.clone())), 8);
        assert_eq!(hk_solve(&mut ctx, &f, &RFunc::one(), &k(&[1])).unwrap().v, g);
    }

    #[test]
    fn two_steps_from_oracle() {
        let f = vf(&[&[1, 0, 0, 1], &[0, 0, 0, 1]]);
        let h = RFunc::from_ints(&[0, 0, 0, 1]);
        let kk = k(&[1, 2]);
        let s = hk_solve(&mut SolveContext::default(), &f, &h, &kk).unwrap();
        assert_eq!(f.dot(&s.v).unwrap(), h);
        assert!(s.v.iter().all(|e| is_hk_member(e, &kk)));
        assert_eq!(s.kernel_checks.len(), 2);
    }

    #[test]
    fn redirect_and_invalid_k() {
        let f = vf(&[&[0, 0, 1], &[0, 0, 0, 1]]);
        assert!(matches!(
            hk_solve(&mut SolveContext::default(), &f, &RFunc::one(), &k(&[1])),
            Err(SolveError::Redirect(_))
        ));
        assert!(matches!(
            hk_solve(&mut SolveContext::default(), &f, &RFunc::one(), &k(&[2])),
            Err(SolveError::InvalidK { .. })
        ));
    }

    #[test]
    fn vanishing_case_above_kp() {
        let f = vf(&[&[0, 0, 1], &[0, 0, 0, 1]]);
        let s = hk_solve_zero(&mut SolveContext::default(), &f, &RFunc::from_ints(&[0, 0, 0, 0, 1]), &k(&[1]), Some(2))
            .unwrap();
        assert_eq!(s.v, vf(&[&[0, 0, 1], &[0]]));
    }

    #[test]
    fn vanishing_case_shifted_algebra() {
        // K = {1,3}, m = 2, K - 2 = {1}
        let f = vf(&[&[0, 0, 1], &[0, 0, 0, 0, 1]]);
        let h = RFunc::from_ints(&[0, 0, 0, 0, 1, 0, 1]);
        let kk = k(&[1, 3]);
        let s = hk_solve_zero(&mut SolveContext::default(), &f, &h, &kk, None).unwrap();
        assert_eq!(f.dot(&s.v).unwrap(), h);
        assert!(s.v.iter().all(|e| is_hk_member(e, &kk)));
    }

    #[test]
    fn shifted_target_outside_algebra_is_refused() {
        // z^2 V = z^5 forces V = z^3, which is not in H_{1,3}
        let f = vf(&[&[0, 0, 1]]);
        let r =
            hk_solve_zero(&mut SolveContext::default(), &f, &RFunc::from_ints(&[0, 0, 0, 0, 0, 1]), &k(&[1, 3]), None);
        assert!(matches!(r, Err(SolveError::NoConstruction(_))));
    }

    #[test]
    fn neither_case() {
        let f = vf(&[&[0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1]]);
        let h = RFunc::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
        let r = hk_solve_zero(&mut SolveContext::default(), &f, &h, &k(&[1, 2, 5]), Some(3));
        assert!(matches!(r, Err(SolveError::NeitherCase { shift: 3, kp: 5, .. })));
    }

    #[test]
    fn vanishing_case_errors() {
        let f = vf(&[&[0, 0, 1], &[0, 0, 0, 1]]);
        let r = hk_solve_zero(&mut SolveContext::default(), &f, &RFunc::from_ints(&[0, 0, 0, 1]), &k(&[1]), Some(2));
        assert!(matches!(r, Err(SolveError::Hypothesis(_))));
        assert!(hk_solve_zero(
            &mut SolveContext::default(),
            &f,
            &RFunc::from_ints(&[0, 0, 0, 0, 1]),
            &k(&[1]),
            Some(1)
        )
        .is_err());
    }

    #[test]
    fn infinite_k() {
        let (data, gaps) = crate::kset::decompose(&[4, 6]).unwrap();
        let f = vf(&[&[1, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1]]);
        let h = RFunc::from_ints(&[0, 0, 0, 0, 0, 0, 1]);
        let s = hk_infinite_solve(&mut SolveContext::default(), &f, &h, &data, &gaps).unwrap();
        assert_eq!(f.dot(&s.v).unwrap(), h);
        assert!(s.v.iter().all(|e| crate::kset::is_hk_member_infinite(e, &data, &gaps)));
    }
}
