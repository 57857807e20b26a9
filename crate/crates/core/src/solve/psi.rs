//! Weight functions `psi` for the pointwise bound `F F* psi(F F*) >= |h|`.

use num::traits::{Signed, Zero};
use num::BigRational;
use serde::{Deserialize, Serialize};

use super::SolveError;
use crate::ring::parse_rational;

/// A non-decreasing map `[0, 1] -> [0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiFunction {
    /// `t^p`, `p > 0`.
    Power {
        #[serde(with = "rational_string")]
        p: BigRational,
    },
    /// `1 / (l_1 l_2 ... l_n l_{n+1}^{1+eps})` with `l_k = ln_k(t^-2)`, used
    /// below the point `t0` where `l_{n+1} = 1` and held constant above it.
    IteratedLog {
        levels: u32,
        #[serde(with = "rational_string")]
        epsilon: BigRational,
    },
    /// Piecewise linear through `(t, psi(t))` pairs spanning `[0, 1]`.
    UserTable {
        #[serde(with = "table_strings")]
        points: Vec<(BigRational, BigRational)>,
    },
}

pub const MAX_LOG_LEVELS: u32 = 3;

impl PsiFunction {
    pub fn sqrt() -> Self {
        PsiFunction::Power { p: BigRational::new(1.into(), 2.into()) }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: &str| Err(SolveError::Input(format!("psi: {msg}")));
        match self {
            PsiFunction::Power { p } if !p.is_positive() => bad("power p must be positive"),
            PsiFunction::IteratedLog { levels, .. } if *levels == 0 || *levels > MAX_LOG_LEVELS => {
                bad("iterated_log levels must be 1, 2 or 3")
            }
            PsiFunction::IteratedLog { epsilon, .. } if !epsilon.is_positive() => bad("epsilon must be positive"),
            PsiFunction::UserTable { points } => {
                let one = BigRational::from_integer(1.into());
                if points.len() < 2 {
                    return bad("table needs at least two points");
                }
                if !points[0].0.is_zero() || points[points.len() - 1].0 != one {
                    return bad("table must start at t = 0 and end at t = 1");
                }
                if points.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return bad("table abscissae must increase strictly");
                }
                if points.windows(2).any(|w| w[0].1 > w[1].1) {
                    return bad("table values must be non-decreasing");
                }
                if points.iter().any(|(_, v)| v.is_negative() || *v > one) {
                    return bad("table values must lie in [0, 1]");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            PsiFunction::Power { p } => t.powf(rat(p)),
            PsiFunction::IteratedLog { levels, epsilon } => iterated_log(t, *levels, rat(epsilon)),
            PsiFunction::UserTable { points } => {
                let pts: Vec<(f64, f64)> = points.iter().map(|(a, b)| (rat(a), rat(b))).collect();
                let i = pts.partition_point(|(x, _)| *x <= t).clamp(1, pts.len() - 1);
                let ((x0, y0), (x1, y1)) = (pts[i - 1], pts[i]);
                y0 + (y1 - y0) * (t - x0) / (x1 - x0)
            }
        }
    }

    /// Whether `int_0^1 psi(t)/t dt` is finite. Power and iterated-log kinds
    /// always are; a piecewise linear table is iff `psi(0) = 0`.
    pub fn integrable(&self) -> bool {
        match self {
            PsiFunction::UserTable { points } => points[0].1.is_zero(),
            _ => true,
        }
    }

    /// `int_{1e-12}^1 psi(t)/t dt`, by adaptive Simpson in `s = -ln t`.
    pub fn integral_estimate(&self) -> f64 {
        let g = |s: f64| self.eval((-s).exp());
        adaptive_simpson(&g, 0.0, 1e12f64.ln(), 1e-10, 40)
    }
}

fn rat(r: &BigRational) -> f64 {
    num::traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn iterated_log(t: f64, levels: u32, eps: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    // l_1 at t0 is exp applied (levels - 1) times to e
    let l1_t0 = (1..levels).fold(std::f64::consts::E, |x, _| x.exp());
    let mut l = (-2.0 * t.ln()).max(l1_t0);
    let mut denom = 1.0;
    for _ in 0..levels {
        denom *= l;
        l = l.ln();
    }
    1.0 / (denom * l.powf(1.0 + eps))
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, depth)
}

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

mod table_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(pts: &[(BigRational, BigRational)], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(String, String)> = pts.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigRational, BigRational)>, D::Error> {
        let v: Vec<(String, String)> = Vec::deserialize(d)?;
        v.iter()
            .map(|(a, b)| Ok((parse_rational(a)?, parse_rational(b)?)))
            .collect::<Result<_, crate::ring::RingError>>()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(pts: &[(&str, &str)]) -> PsiFunction {
        PsiFunction::UserTable {
            points: pts.iter().map(|(a, b)| (parse_rational(a).unwrap(), parse_rational(b).unwrap())).collect(),
        }
    }

    #[test]
    fn power_values() {
        let s = PsiFunction::sqrt();
        assert!((s.eval(0.25) - 0.5).abs() < 1e-15);
        assert_eq!(s.eval(0.0), 0.0);
        assert!(PsiFunction::Power { p: BigRational::zero() }.validate().is_err());
    }

    #[test]
    fn iterated_log_is_monotone_and_bounded() {
        for levels in 1..=3 {
            let psi = PsiFunction::IteratedLog { levels, epsilon: BigRational::new(1.into(), 10.into()) };
            psi.validate().unwrap();
            let mut prev = 0.0;
            for k in 0..=400 {
                let t = (k as f64 / 400.0).powi(6);
                let v = psi.eval(t);
                assert!((0.0..=1.0).contains(&v) && v + 1e-15 >= prev, "levels {levels} t {t}");
                prev = v;
            }
        }
        // first level at t0 = exp(-e/2): 1 / e
        let psi = PsiFunction::IteratedLog { levels: 1, epsilon: BigRational::new(1.into(), 2.into()) };
        assert!((psi.eval(1.0) - (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn tables() {
        let t = table(&[("0", "0"), ("1/2", "1/4"), ("1", "1")]);
        t.validate().unwrap();
        assert!((t.eval(0.25) - 0.125).abs() < 1e-15);
        assert!((t.eval(0.75) - 0.625).abs() < 1e-15);
        assert!(t.integrable());
        let flat = table(&[("0", "1/2"), ("1", "1/2")]);
        assert!(!flat.integrable());
        // 1/2 * ln(1e12)
        assert!((flat.integral_estimate() - 0.5 * 1e12f64.ln()).abs() < 1e-6);
        assert!(table(&[("0", "1/2"), ("1", "1/4")]).validate().is_err());
        assert!(table(&[("1/4", "0"), ("1", "1")]).validate().is_err());
    }

    #[test]
    fn integral_of_identity_is_one() {
        let id = PsiFunction::Power { p: BigRational::from_integer(1.into()) };
        assert!((id.integral_estimate() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn serde_shapes() {
        let p: PsiFunction = serde_json::from_str(r#"{"kind":"power","p":"1/2"}"#).unwrap();
        assert_eq!(p, PsiFunction::sqrt());
        let l: PsiFunction = serde_json::from_str(r#"{"kind":"iterated_log","levels":1,"epsilon":"1/10"}"#).unwrap();
        assert!(matches!(l, PsiFunction::IteratedLog { levels: 1, .. }));
        let t: PsiFunction = serde_json::from_str(r#"{"kind":"user_table","points":[["0","0"],["1","1"]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"kind":"user_table","points":[["0","0"],["1","1"]]}"#);
    }
}
