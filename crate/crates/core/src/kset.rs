//! Index sets `K` for the subalgebras `H_K = { f : f^(j)(0) = 0 for j in K }`.
//!
//! `H_K` is an algebra exactly when the complement of `K` in the positive
//! integers is closed under addition. A finite `K` is stored directly; an
//! infinite one only through generators of its complement, which reduce to a
//! finite gap set after the substitution `w = z^d`.

use std::fmt;

use num::integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::RFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KSetError {
    #[error("0 is not a valid element; K holds positive integers")]
    ZeroElement,
    #[error("{0} belongs to K, so K - {0} is undefined here")]
    ShiftInK(usize),
    #[error("complement generators must be a non-empty set of positive integers")]
    BadGenerators,
    #[error("f is not a function of z^{d}: {reason}")]
    NotReducible { d: usize, reason: String },
}

/// A finite, sorted set of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct KSet {
    elements: Vec<usize>,
}

impl TryFrom<Vec<usize>> for KSet {
    type Error = KSetError;
    fn try_from(v: Vec<usize>) -> Result<Self, KSetError> {
        KSet::new(v)
    }
}

impl From<KSet> for Vec<usize> {
    fn from(k: KSet) -> Self {
        k.elements
    }
}

impl KSet {
    /// Sorts and deduplicates; rejects 0.
    pub fn new(mut elements: Vec<usize>) -> Result<Self, KSetError> {
        if elements.contains(&0) {
            return Err(KSetError::ZeroElement);
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(KSet { elements })
    }

    pub fn empty() -> Self {
        KSet::default()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.elements.binary_search(&j).is_ok()
    }

    /// Largest element `k_p`.
    pub fn max(&self) -> Option<usize> {
        self.elements.last().copied()
    }

    /// `K_{p-1}`: drop the largest element.
    pub fn without_max(&self) -> KSet {
        let mut elements = self.elements.clone();
        elements.pop();
        KSet { elements }
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of [`is_algebra_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraVerdict {
    Algebra,
    /// `j, k` lie outside `K` but `j + k` lies in it.
    NotAlgebra {
        j: usize,
        k: usize,
    },
}

impl AlgebraVerdict {
    pub fn is_algebra(&self) -> bool {
        matches!(self, AlgebraVerdict::Algebra)
    }

    pub fn counterexample(&self) -> Option<(usize, usize)> {
        match *self {
            AlgebraVerdict::Algebra => None,
            AlgebraVerdict::NotAlgebra { j, k } => Some((j, k)),
        }
    }
}

/// Decides whether `H_K` is closed under multiplication. Only sums up to
/// `k_p` need checking; the first violating pair `j <= k` is reported.
pub fn is_algebra_set(set: &KSet) -> AlgebraVerdict {
    let Some(kp) = set.max() else {
        return AlgebraVerdict::Algebra;
    };
    for j in (1..=kp / 2).filter(|&j| !set.contains(j)) {
        for k in (j..=kp - j).filter(|&k| !set.contains(k)) {
            if set.contains(j + k) {
                return AlgebraVerdict::NotAlgebra { j, k };
            }
        }
    }
    AlgebraVerdict::Algebra
}

/// `K - m = { j - m : j in K, j > m }`.
pub fn k_minus(set: &KSet, m: usize) -> Result<KSet, KSetError> {
    if set.contains(m) {
        return Err(KSetError::ShiftInK(m));
    }
    Ok(KSet { elements: set.elements.iter().filter(|&&j| j > m).map(|&j| j - m).collect() })
}

/// `f` lies in `H_K`: every Maclaurin coefficient indexed by `K` vanishes.
pub fn is_hk_member(f: &RFunc, set: &KSet) -> bool {
    let Some(kp) = set.max() else {
        return true;
    };
    let coeffs = f.taylor_coeffs(kp);
    set.elements.iter().all(|&j| coeffs[j].is_zero())
}

/// Structure of an infinite `K` whose complement is the additive semigroup
/// generated by some positive integers:
/// `N - K = { n_1 d, ..., n_p d } u { t d : t >= n0 }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupData {
    pub d: usize,
    pub n_values: Vec<usize>,
    pub n0: usize,
}

impl SemigroupData {
    /// Whether the positive integer `t` lies outside `K`.
    pub fn in_complement(&self, t: usize) -> bool {
        if t == 0 || !t.is_multiple_of(self.d) {
            return false;
        }
        let s = t / self.d;
        s >= self.n0 || self.n_values.binary_search(&s).is_ok()
    }
}

/// Splits an infinite `K`, given by generators of `N - K`, into the scale `d`
/// and the finite gap set `K_1` of the numerical semigroup generated by
/// `generators / d`.
pub fn decompose(generators: &[usize]) -> Result<(SemigroupData, KSet), KSetError> {
    if generators.is_empty() || generators.contains(&0) {
        return Err(KSetError::BadGenerators);
    }
    let d = generators.iter().fold(0usize, |g, &x| g.gcd(&x));
    let mut gens: Vec<usize> = generators.iter().map(|&x| x / d).collect();
    gens.sort_unstable();
    gens.dedup();
    let (lo, hi) = (gens[0], gens[gens.len() - 1]);
    // the Frobenius number of a numerical semigroup is below lo * hi
    let limit = lo * hi + hi;
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for t in 1..=limit {
        member[t] = gens.iter().any(|&g| g <= t && member[t - g]);
    }
    let gaps: Vec<usize> = (1..=limit).filter(|&t| !member[t]).collect();
    let conductor = gaps.last().map_or(1, |g| g + 1);
    let mut n_values: Vec<usize> = (1..conductor).filter(|&t| member[t]).collect();
    let mut next = conductor;
    while n_values.is_empty() || n_values.iter().fold(0usize, |g, &x| g.gcd(&x)) != 1 {
        n_values.push(next);
        next += 1;
    }
    let n0 = next;
    Ok((SemigroupData { d, n_values, n0 }, KSet { elements: gaps }))
}

/// `F_1` with `F_1(z^d) = f`.
pub fn reduce_to_finite(f: &RFunc, d: usize) -> Result<RFunc, KSetError> {
    if d == 0 {
        return Err(KSetError::NotReducible { d, reason: "d must be positive".into() });
    }
    f.deflate(d)
        .ok_or_else(|| KSetError::NotReducible { d, reason: format!("{f} has a term z^j with d not dividing j") })
}

/// Inverse of [`reduce_to_finite`]: `f(z^d)`.
pub fn lift(f: &RFunc, d: usize) -> RFunc {
    f.inflate(d)
}

/// Membership in `H_K` for the infinite `K` described by `data` and its
/// finite gap set `k1`.
pub fn is_hk_member_infinite(f: &RFunc, data: &SemigroupData, k1: &KSet) -> bool {
    reduce_to_finite(f, data.d).is_ok_and(|g| is_hk_member(&g, k1))
}
