//! Koszul operators on exterior powers of `C^n`.
//!
//! Grade-`k` wedge vectors are coefficient lists over the strictly
//! increasing `k`-tuples of `{0, .., n-1}` in lexicographic order.
//! `Q_A^(k)` maps grade `k+1` to grade `k` and is the transpose, with
//! conjugation dropped, of `w -> conj(A) ^ w`. For `n = 2` the grade-1 operator
//! is the column `(-a_2, a_1)^T`.

use thiserror::Error;

use crate::ring::{GRat, RFunc, Scalar, VecFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("grade {k} out of range for dimension {n}")]
    GradeOutOfRange { k: usize, n: usize },
}

/// Lexicographic basis of strictly increasing `k`-tuples from `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBasis {
    n: usize,
    k: usize,
    tuples: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut tuples);
        WedgeBasis { n, k, tuples }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }
}

/// One nonzero entry of a Koszul matrix: `(-1)^negative * a[source]` at
/// `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QEntry {
    pub row: usize,
    pub col: usize,
    pub source: usize,
    pub negative: bool,
}

/// Sparse `Q_A^(k)` in coordinate form.
#[derive(Debug, Clone, PartialEq)]
pub struct QOperator<S> {
    grade: usize,
    rows: usize,
    cols: usize,
    entries: Vec<QEntry>,
    source: Vec<S>,
}

impl<S: Scalar> QOperator<S> {
    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn source(&self) -> &[S] {
        &self.source
    }

    pub fn entries(&self) -> &[QEntry] {
        &self.entries
    }

    pub fn entry_value(&self, e: &QEntry) -> S {
        let a = &self.source[e.source];
        if e.negative {
            a.negated()
        } else {
            a.clone()
        }
    }

    pub fn dense(&self) -> Vec<Vec<S>> {
        let mut m = vec![vec![S::zero(); self.cols]; self.rows];
        for e in &self.entries {
            m[e.row][e.col] = self.entry_value(e);
        }
        m
    }

    /// `Q x` for a grade-`k+1` vector `x`.
    pub fn apply(&self, x: &[S]) -> Result<Vec<S>, KoszulError> {
        check_len(self.cols, x.len())?;
        let mut out = vec![S::zero(); self.rows];
        for e in &self.entries {
            if !x[e.col].is_zero() {
                out[e.row] = out[e.row].plus(&self.entry_value(e).times(&x[e.col]));
            }
        }
        Ok(out)
    }

    /// `Q^T y` for a grade-`k` vector `y`, without conjugation.
    pub fn apply_transpose(&self, y: &[S]) -> Result<Vec<S>, KoszulError> {
        check_len(self.rows, y.len())?;
        let mut out = vec![S::zero(); self.cols];
        for e in &self.entries {
            if !y[e.row].is_zero() {
                out[e.col] = out[e.col].plus(&self.entry_value(e).times(&y[e.row]));
            }
        }
        Ok(out)
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), KoszulError> {
    if expected == got {
        Ok(())
    } else {
        Err(KoszulError::Dimension { expected, got })
    }
}

/// Matrix of `Q_A^(k)`, defined for `0 <= k <= n - 1`.
pub fn q_matrix<S: Scalar>(a: &[S], k: usize) -> Result<QOperator<S>, KoszulError> {
    let n = a.len();
    if k >= n {
        return Err(KoszulError::GradeOutOfRange { k, n });
    }
    let low = WedgeBasis::new(n, k);
    let high = WedgeBasis::new(n, k + 1);
    let mut entries = Vec::new();
    let mut pi = Vec::with_capacity(k);
    for (col, sigma) in high.tuples().iter().enumerate() {
        for (p, &l) in sigma.iter().enumerate() {
            if a[l].is_zero() {
                continue;
            }
            pi.clear();
            pi.extend(sigma.iter().copied().filter(|&x| x != l));
            let row = low.index_of(&pi).expect("sub-tuple of a basis tuple is a basis tuple");
            entries.push(QEntry { row, col, source: l, negative: p % 2 == 1 });
        }
    }
    Ok(QOperator { grade: k, rows: low.len(), cols: high.len(), entries, source: a.to_vec() })
}

/// `conj(A) ^ w` for a grade-`k` vector `w`.
pub fn q_star_apply(a: &[GRat], w: &[GRat], k: usize) -> Result<Vec<GRat>, KoszulError> {
    let n = a.len();
    let low = WedgeBasis::new(n, k);
    check_len(low.len(), w.len())?;
    if k >= n {
        return Ok(Vec::new());
    }
    let high = WedgeBasis::new(n, k + 1);
    let mut out = vec![GRat::zero(); high.len()];
    let mut sigma = Vec::with_capacity(k + 1);
    for (pi, coeff) in low.tuples().iter().zip(w) {
        if coeff.is_zero() {
            continue;
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() || pi.contains(&i) {
                continue;
            }
            let before = pi.iter().filter(|&&x| x < i).count();
            sigma.clear();
            sigma.extend_from_slice(pi);
            sigma.insert(before, i);
            let idx = high.index_of(&sigma).expect("sorted insertion gives a basis tuple");
            let term = &ai.conj() * coeff;
            out[idx] = if before % 2 == 0 { &out[idx] + &term } else { &out[idx] - &term };
        }
    }
    Ok(out)
}

/// `Q_A^(k) Q_A^(k+1) = 0`, checked exactly; needs `k + 1 <= n - 1`.
pub fn check_range_kernel(a: &[GRat], k: usize) -> Result<bool, KoszulError> {
    let outer = q_matrix(a, k)?;
    let inner = q_matrix(a, k + 1)?;
    let inner_dense = inner.dense();
    let (_, cols) = inner.shape();
    for c in 0..cols {
        let column: Vec<GRat> = inner_dense.iter().map(|row| row[c].clone()).collect();
        if outer.apply(&column)?.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(A B^T) I = B^T A + Q_A Q_B^T` with grade-1 operators, checked exactly.
pub fn check_rank_one_identity(a: &[GRat], b: &[GRat]) -> Result<bool, KoszulError> {
    let n = a.len();
    check_len(n, b.len())?;
    let ab = a.iter().zip(b).fold(GRat::zero(), |acc, (x, y)| &acc + &(x * y));
    let mut rhs: Vec<Vec<GRat>> = (0..n).map(|i| (0..n).map(|j| &b[i] * &a[j]).collect()).collect();
    if n >= 2 {
        let qa = q_matrix(a, 1)?.dense();
        let qb = q_matrix(b, 1)?.dense();
        for (i, row) in rhs.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s = qa[i].iter().zip(&qb[j]).fold(GRat::zero(), |acc, (x, y)| &acc + &(x * y));
                *cell = &*cell + &s;
            }
        }
    }
    Ok(rhs
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, cell)| if i == j { *cell == ab } else { cell.is_zero() })))
}

/// `Q_F X` for a grade-2 wedge vector `X` of functions; the result `V`
/// satisfies `F V^T = 0`.
pub fn q_apply_vecfn(f: &VecFn, x: &[RFunc]) -> Result<VecFn, KoszulError> {
    if f.len() < 2 {
        check_len(0, x.len())?;
        return Ok(VecFn::zeros(f.len()));
    }
    let q = q_matrix(f.entries(), 1)?;
    Ok(VecFn::new(q.apply(x)?).expect("n >= 2"))
}

/// `Q_G^T v` for a function tuple `G` and a constant grade-1 vector `v`.
pub fn q_transpose_apply_const(g: &VecFn, v: &[GRat]) -> Result<Vec<RFunc>, KoszulError> {
    check_len(g.len(), v.len())?;
    if g.len() < 2 {
        return Ok(Vec::new());
    }
    let q = q_matrix(g.entries(), 1)?;
    let v: Vec<RFunc> = v.iter().cloned().map(RFunc::constant).collect();
    q.apply_transpose(&v)
}
