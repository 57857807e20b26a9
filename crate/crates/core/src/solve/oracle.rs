//! Exact Bezout solutions in `H^inf` for rational data.
//!
//! With `f_i = p_i / d_i`, iterated extended Euclid gives `sum p_i u_i = s`
//! where `s` generates the ideal of the `p_i` in `C[z]`. Inverting the
//! polynomials without zeros in the closed disk turns this into the ideal of
//! the `f_i` in `H^inf` intersected with rational functions, so `h` lies in it
//! iff `h / s` has no pole in the closed disk, and then
//! `g_i = u_i d_i (h / s)`.

use super::SolveError;
use crate::ring::{Poly, RFunc, RingError, VecFn};

/// `G` with `F G^T = h`, all entries bounded on the disk.
pub fn bezout_oracle(f: &VecFn, h: &RFunc) -> Result<VecFn, SolveError> {
    if h.is_zero() {
        return Ok(VecFn::zeros(f.len()));
    }
    let mut u: Vec<Poly> = vec![Poly::zero(); f.len()];
    let mut s = Poly::zero();
    for (i, fi) in f.iter().enumerate() {
        let p = fi.num();
        if p.is_zero() {
            continue;
        }
        if s.is_zero() {
            let lead = p.leading().expect("nonzero").inv().expect("nonzero");
            u[i] = Poly::constant(lead.clone());
            s = p.scale(&lead);
            continue;
        }
        let (g, x, y) = Poly::ext_gcd(&s, p);
        for prev in u.iter_mut().take(i) {
            if !prev.is_zero() {
                *prev = &*prev * &x;
            }
        }
        u[i] = y;
        s = g;
    }
    if s.is_zero() {
        return Err(SolveError::NotInIdeal(format!("F = 0 but h = {h}")));
    }
    let quotient = h.div_poly(&s).map_err(|e| match e {
        RingError::Indeterminate(msg) => SolveError::IllConditioned(msg),
        _ => SolveError::NotInIdeal(format!(
            "h = {h} does not vanish at the common zeros of F in the closed disk (gcd {s})"
        )),
    })?;
    let g = f.iter().zip(u).map(|(fi, ui)| &RFunc::from_poly(&ui * fi.den()) * &quotient).collect();
    Ok(reduce_degrees(f, VecFn::new(g)?))
}

/// For polynomial `F` and `G`: reduces every `g_i` modulo the lowest-degree
/// nonzero `f_j` and lets `g_j` absorb the quotients. `F G^T` is unchanged.
fn reduce_degrees(f: &VecFn, g: VecFn) -> VecFn {
    let fp: Option<Vec<&Poly>> = f.iter().map(RFunc::as_polynomial).collect();
    let gp: Option<Vec<&Poly>> = g.iter().map(RFunc::as_polynomial).collect();
    let (Some(fp), Some(gp)) = (fp, gp) else { return g };
    let Some(j) = (0..fp.len()).filter(|&i| !fp[i].is_zero()).min_by_key(|&i| fp[i].degree()) else {
        return g;
    };
    let mut out: Vec<Poly> = gp.into_iter().cloned().collect();
    let mut pivot = out[j].clone();
    for i in (0..fp.len()).filter(|&i| i != j) {
        let (q, r) = out[i].div_rem(fp[j]).expect("pivot is nonzero");
        pivot = &pivot + &(&q * fp[i]);
        out[i] = r;
    }
    out[j] = pivot;
    VecFn::new(out.into_iter().map(RFunc::from_poly).collect()).expect("same length as F")
}
