//! Problem instances: generators `F`, target `h`, the ambient subalgebra, and
//! the weight `psi`.

use serde::{Deserialize, Serialize};

use super::{PsiFunction, SolveError};
use crate::blaschke::Blaschke;
use crate::kset::{self, is_algebra_set, is_hk_member, KSet, SemigroupData};
use crate::ring::{RFunc, VecFn};

/// The subalgebra of `H^inf` in which a solution is sought.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraRepr", into = "AlgebraRepr")]
pub enum Algebra {
    Hinf,
    /// `C + B H^inf`.
    CPlusB(Blaschke),
    /// `H_K` for a finite `K`.
    HK(KSet),
    /// `H_K` for an infinite `K` whose complement is generated additively by
    /// `generators`.
    HKInfinite {
        generators: Vec<usize>,
        data: SemigroupData,
        gaps: KSet,
    },
    /// `H_{K(B)}`.
    HKB(KSet, Blaschke),
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blaschke: Option<Blaschke>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<KSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complement_generators: Option<Vec<usize>>,
}

impl TryFrom<AlgebraRepr> for Algebra {
    type Error = SolveError;
    fn try_from(r: AlgebraRepr) -> Result<Self, SolveError> {
        let need_b = |b: Option<Blaschke>| {
            b.ok_or_else(|| SolveError::Input(format!("algebra {} needs a blaschke field", r.kind)))
        };
        let algebra = match r.kind.as_str() {
            "hinf" => Algebra::Hinf,
            "cplusb" => Algebra::CPlusB(need_b(r.blaschke)?),
            "hk" => match (r.k, r.complement_generators) {
                (Some(k), None) => Algebra::HK(k),
                (None, Some(g)) => Algebra::hk_infinite(g)?,
                _ => return Err(SolveError::Input("hk needs exactly one of k, complement_generators".into())),
            },
            "hkb" => {
                let k = r.k.ok_or_else(|| SolveError::Input("hkb needs a k field".into()))?;
                Algebra::HKB(k, need_b(r.blaschke)?)
            }
            other => return Err(SolveError::Input(format!("unknown algebra kind {other:?}"))),
        };
        algebra.check_valid()?;
        Ok(algebra)
    }
}

impl From<Algebra> for AlgebraRepr {
    fn from(a: Algebra) -> Self {
        let mut r = AlgebraRepr { kind: a.kind().into(), blaschke: None, k: None, complement_generators: None };
        match a {
            Algebra::Hinf => {}
            Algebra::CPlusB(b) => r.blaschke = Some(b),
            Algebra::HK(k) => r.k = Some(k),
            Algebra::HKInfinite { generators, .. } => r.complement_generators = Some(generators),
            Algebra::HKB(k, b) => {
                r.k = Some(k);
                r.blaschke = Some(b);
            }
        }
        r
    }
}

impl Algebra {
    pub fn hk_infinite(generators: Vec<usize>) -> Result<Self, SolveError> {
        let (data, gaps) = kset::decompose(&generators)?;
        Ok(Algebra::HKInfinite { generators, data, gaps })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Algebra::Hinf => "hinf",
            Algebra::CPlusB(_) => "cplusb",
            Algebra::HK(_) | Algebra::HKInfinite { .. } => "hk",
            Algebra::HKB(..) => "hkb",
        }
    }

    /// Rejects index sets that do not define an algebra.
    pub fn check_valid(&self) -> Result<(), SolveError> {
        match self {
            Algebra::HK(k) | Algebra::HKB(k, _) => match is_algebra_set(k).counterexample() {
                Some((a, b)) => Err(SolveError::InvalidK { set: k.clone(), j: a, k: b }),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    pub fn contains(&self, f: &RFunc) -> bool {
        match self {
            Algebra::Hinf => true,
            Algebra::CPlusB(b) => b.is_cplusb_member(f),
            Algebra::HK(k) => is_hk_member(f, k),
            Algebra::HKInfinite { data, gaps, .. } => kset::is_hk_member_infinite(f, data, gaps),
            Algebra::HKB(k, b) => b.is_hkb_member(f, k),
        }
    }

    pub fn contains_all(&self, v: &VecFn) -> bool {
        v.iter().all(|f| self.contains(f))
    }
}

/// One Bezout problem `F V^T = h` with its hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(rename = "F")]
    pub f: VecFn,
    pub h: RFunc,
    pub algebra: Algebra,
    pub psi: PsiFunction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_solution: Option<VecFn>,
}

impl Instance {
    pub fn new(f: VecFn, h: RFunc, algebra: Algebra) -> Self {
        Instance { f, h, algebra, psi: PsiFunction::sqrt(), base_solution: None }
    }

    pub fn with_psi(mut self, psi: PsiFunction) -> Self {
        self.psi = psi;
        self
    }

    pub fn with_base(mut self, g: VecFn) -> Self {
        self.base_solution = Some(g);
        self
    }

    /// Load-time checks: membership of the data and exactness of a supplied
    /// base solution.
    pub fn validate(&self) -> Result<(), SolveError> {
        self.psi.validate()?;
        self.algebra.check_valid()?;
        if let Some(i) = self.f.iter().position(|e| !self.algebra.contains(e)) {
            return Err(SolveError::Hypothesis(format!(
                "F entry {} = {} is not in the {} algebra",
                i + 1,
                self.f[i],
                self.algebra.kind()
            )));
        }
        if !self.algebra.contains(&self.h) {
            return Err(SolveError::Hypothesis(format!(
                "h = {} is not in the {} algebra",
                self.h,
                self.algebra.kind()
            )));
        }
        if let Some(g) = &self.base_solution {
            if g.len() != self.f.len() {
                return Err(SolveError::Input("base_solution length differs from F".into()));
            }
            if self.f.dot(g)? != self.h {
                return Err(SolveError::Input("base_solution does not satisfy F G^T = h".into()));
            }
        }
        Ok(())
    }
}
