//! Root location relative to the closed unit disk.
//!
//! The decision is made exactly with the Schur–Cohn transform
//! `T p = conj(p(0)) p - lead(p) p*`, where `p*` is the reciprocal
//! polynomial. When `|p(0)| > |lead(p)|` the transform has strictly smaller
//! degree and the same zeros in the closed disk as `p` (Rouché on the unit
//! circle, where `|p| = |p*|`); otherwise the product of the roots has
//! modulus at most one and some root lies in the closed disk. A
//! Durand–Kerner solve in double precision is run alongside as a cross-check.

use num::complex::Complex64;
use num::traits::Zero;

#[cfg(test)]
use super::GRat;
use super::{Poly, RingError};

/// Band around the unit circle inside which the float root check abstains.
pub const ROOT_MODULUS_TOLERANCE: f64 = 1e-9;

/// True iff every root of `p` has modulus strictly greater than one.
///
/// Errors with [`RingError::ZeroPolynomial`] on `p = 0` and with
/// [`RingError::Indeterminate`] when the float root solve contradicts the
/// exact test at a root farther than [`ROOT_MODULUS_TOLERANCE`] from the
/// circle.
pub fn den_admissible(p: &Poly) -> Result<bool, RingError> {
    if p.is_zero() {
        return Err(RingError::ZeroPolynomial);
    }
    let exact = schur_cohn_outside(p);
    if p.is_constant() {
        return Ok(exact);
    }
    let roots = durand_kerner(&p.to_complex());
    let min_modulus = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    let float_verdict = min_modulus > 1.0;
    if float_verdict != exact && (min_modulus - 1.0).abs() >= ROOT_MODULUS_TOLERANCE {
        return Err(RingError::Indeterminate(format!(
            "float root solve (min modulus {min_modulus:.3e}) contradicts the exact Schur-Cohn test for {p}"
        )));
    }
    Ok(exact)
}

/// Exact Schur–Cohn recursion; `p` must be nonzero.
pub fn schur_cohn_outside(p: &Poly) -> bool {
    let mut cur = p.clone();
    loop {
        let Some(deg) = cur.degree() else { unreachable!("Schur-Cohn transform of a nonzero polynomial is nonzero") };
        if deg == 0 {
            return true;
        }
        let a0 = cur.coeff(0);
        let an = cur.coeff(deg);
        if a0.norm_sqr() <= an.norm_sqr() {
            return false;
        }
        let next = &cur.scale(&a0.conj()) - &cur.reciprocal().scale(&an);
        // rescale so the constant term is one; keeps coefficients small
        let c0 = next.coeff(0);
        debug_assert!(!c0.is_zero());
        cur = next.scale(&c0.inv().expect("T p (0) = |a0|^2 - |an|^2 > 0"));
    }
}

/// All complex roots of a polynomial given by its coefficients (lowest
/// degree first, nonzero leading coefficient).
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound on root moduli
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let num = super::poly::horner(&monic, zi);
            let mut den = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    den *= zi - zj;
                }
            }
            if den.is_zero() {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = num / den;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta <= 1e-15 * bound {
            break;
        }
    }
    roots
}

/// Minimum root modulus of `p` in double precision (`inf` for constants).
pub fn min_root_modulus(p: &Poly) -> f64 {
    durand_kerner(&p.to_complex()).iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| GRat::ratio(n, d)).collect())
    }

    #[test]
    fn spec_examples() {
        // 1 - z/2 has root 2
        assert!(den_admissible(&p(&[(1, 1), (-1, 2)])).unwrap());
        // 1 - 2z has root 1/2
        assert!(!den_admissible(&p(&[(1, 1), (-2, 1)])).unwrap());
        assert!(den_admissible(&p(&[(1, 1)])).unwrap());
        assert!(matches!(den_admissible(&Poly::zero()), Err(RingError::ZeroPolynomial)));
    }

    #[test]
    fn roots_on_the_circle_are_rejected() {
        // 1 - z has root 1; 1 + z^2 has roots +-i
        assert!(!den_admissible(&p(&[(1, 1), (-1, 1)])).unwrap());
        assert!(!den_admissible(&p(&[(1, 1), (0, 1), (1, 1)])).unwrap());
    }

    #[test]
    fn degree_drop_by_more_than_one() {
        // (1 - z/2)(1 - z/3)(1 - z/5): roots 2, 3, 5
        let f = &(&p(&[(1, 1), (-1, 2)]) * &p(&[(1, 1), (-1, 3)])) * &p(&[(1, 1), (-1, 5)]);
        assert!(den_admissible(&f).unwrap());
        let g = &f * &p(&[(1, 1), (-3, 2)]); // adds root 2/3
        assert!(!den_admissible(&g).unwrap());
    }

    #[test]
    fn complex_roots() {
        // root at 1.1 i: z - 1.1 i
        let f = Poly::new(vec![GRat::complex(0, 1, -11, 10), GRat::one()]);
        assert!(den_admissible(&f).unwrap());
        let g = Poly::new(vec![GRat::complex(0, 1, -9, 10), GRat::one()]);
        assert!(!den_admissible(&g).unwrap());
    }

    #[test]
    fn durand_kerner_recovers_roots() {
        let f = &p(&[(-2, 1), (1, 1)]) * &p(&[(3, 1), (1, 1)]);
        let mut r: Vec<f64> = durand_kerner(&f.to_complex()).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 3.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn scale_invariance() {
        let f = p(&[(1, 1), (-1, 3), (1, 7)]);
        let c = GRat::complex(-2, 3, 5, 1);
        assert_eq!(den_admissible(&f).unwrap(), den_admissible(&f.scale(&c)).unwrap());
    }
}
