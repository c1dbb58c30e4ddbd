//! Total nonnegativity: brute-force testing, the zero-pattern check, and a
//! seeded generator of (mostly singular) totally nonnegative matrices.

use std::fmt;

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det::minor_unchecked;
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::{ratio, Mat, Scalar};
use crate::mclass::DEFAULT_BRUTEFORCE_LIMIT;

/// A minor `[rows|cols]` together with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnnReport {
    pub is_tnn: bool,
    /// The first negative minor (by size, then rows, then columns), if any.
    pub witness: Option<MinorWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpReport {
    pub is_tp: bool,
    /// The first non-positive minor, if any.
    pub witness: Option<MinorWitness>,
}

/// Visits every square minor in a fixed order (size, then rows, then
/// columns, each lexicographic) and returns the first one failing `ok`.
fn first_failing_minor(a: &Mat, limit: usize, ok: impl Fn(&Scalar) -> bool) -> Result<Option<MinorWitness>> {
    let size = a.rows().min(a.cols());
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    for k in 1..=size {
        let cols: Vec<IndexSet> = IndexSet::combinations(a.cols(), k).collect();
        for rows in IndexSet::combinations(a.rows(), k) {
            for c in &cols {
                let value = minor_unchecked(a, rows.as_slice(), c.as_slice());
                if !ok(&value) {
                    return Ok(Some(MinorWitness {
                        rows,
                        cols: c.clone(),
                        value,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_tnn(a: &Mat) -> Result<TnnReport> {
    is_tnn_with_limit(a, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Every minor `>= 0`. Exponential; refuses `min(m, n) > limit`.
pub fn is_tnn_with_limit(a: &Mat, limit: usize) -> Result<TnnReport> {
    let witness = first_failing_minor(a, limit, |x| !x.is_negative())?;
    Ok(TnnReport {
        is_tnn: witness.is_none(),
        witness,
    })
}

pub fn is_tp(a: &Mat) -> Result<TpReport> {
    is_tp_with_limit(a, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Every minor `> 0`.
pub fn is_tp_with_limit(a: &Mat, limit: usize) -> Result<TpReport> {
    let witness = first_failing_minor(a, limit, Signed::is_positive)?;
    Ok(TpReport {
        is_tp: witness.is_none(),
        witness,
    })
}

/// A zero entry `a_{ij}` with a nonzero entry to its right (`a_{il}`) and
/// a nonzero entry below it (`a_{kj}`). Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CauchonViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl fmt::Display for CauchonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a[{},{}] = 0 but a[{},{}] != 0 and a[{},{}] != 0",
            self.i, self.j, self.i, self.l, self.k, self.j
        )
    }
}

/// The zero-pattern condition every totally nonnegative matrix satisfies:
/// for `i < k`, `j < l`, if `a_ij = 0` then `a_il = 0` or `a_kj = 0`.
/// Reports the first violation scanning `(i, j)` row-major, then the
/// smallest `k`, then the smallest `l`.
pub fn cauchon_check(a: &Mat) -> std::result::Result<(), CauchonViolation> {
    let (m, n) = a.shape();
    for i in 1..=m {
        for j in 1..=n {
            if !a[(i, j)].is_zero() {
                continue;
            }
            let below = (i + 1..=m).find(|&k| !a[(k, j)].is_zero());
            let right = (j + 1..=n).find(|&l| !a[(i, l)].is_zero());
            if let (Some(k), Some(l)) = (below, right) {
                return Err(CauchonViolation { i, j, k, l });
            }
        }
    }
    Ok(())
}

/// A random nonnegative rational from `{0, 1/2, 1, 3/2, ..., 3}`.
fn small_nonneg(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.random_range(0..=3), rng.random_range(1..=2))
}

fn diag_entry(rng: &mut ChaCha8Rng) -> Scalar {
    if rng.random_ratio(1, 5) {
        Scalar::zero()
    } else {
        ratio(rng.random_range(1..=3), rng.random_range(1..=2))
    }
}

fn add_row_multiple(a: &mut Mat, dst: usize, src: usize, lambda: &Scalar) {
    for c in 0..a.cols() {
        let v = a.at(src, c) * lambda;
        *a.at_mut(dst, c) += v;
    }
}

fn add_col_multiple(a: &mut Mat, dst: usize, src: usize, lambda: &Scalar) {
    for r in 0..a.rows() {
        let v = a.at(r, src) * lambda;
        *a.at_mut(r, dst) += v;
    }
}

/// A seeded totally nonnegative `m x n` matrix.
///
/// Starts from the rectangular identity (with random zero or positive
/// diagonal entries when `factors > 0`) and applies `factors` random
/// totally nonnegative factors on either side: `I + λE(i+1,i)`,
/// `I + λE(i,i+1)` with `λ >= 0`, or a nonnegative diagonal that may
/// contain zeros. Products of totally nonnegative matrices stay totally
/// nonnegative, so the result is too. `factors = 0` gives the identity.
pub fn random_tnn(m: usize, n: usize, seed: u64, factors: usize) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Mat::from_fn(m, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() });
    if factors > 0 {
        for d in 0..m.min(n) {
            *a.at_mut(d, d) = diag_entry(&mut rng);
        }
    }
    for _ in 0..factors {
        let left = rng.random_bool(0.5);
        let dim = if left { m } else { n };
        let kind = rng.random_range(0..8u8);
        if kind == 0 || dim < 2 {
            // nonnegative diagonal
            for d in 0..dim {
                let x = if rng.random_ratio(1, 6) {
                    Scalar::zero()
                } else {
                    ratio(rng.random_range(1..=2), rng.random_range(1..=2))
                };
                if left {
                    for c in 0..n {
                        *a.at_mut(d, c) *= &x;
                    }
                } else {
                    for r in 0..m {
                        *a.at_mut(r, d) *= &x;
                    }
                }
            }
            continue;
        }
        let i = rng.random_range(0..dim - 1);
        let lambda = small_nonneg(&mut rng);
        let lower = kind % 2 == 0;
        match (left, lower) {
            // (I + λE(i+1,i)) A: row i+1 += λ row i
            (true, true) => add_row_multiple(&mut a, i + 1, i, &lambda),
            // (I + λE(i,i+1)) A: row i += λ row i+1
            (true, false) => add_row_multiple(&mut a, i, i + 1, &lambda),
            // A (I + λE(i+1,i)): col i += λ col i+1
            (false, true) => add_col_multiple(&mut a, i, i + 1, &lambda),
            // A (I + λE(i,i+1)): col i+1 += λ col i
            (false, false) => add_col_multiple(&mut a, i + 1, i, &lambda),
        }
    }
    a
}

/// A reproducible corpus of `count` random TNN matrices with shapes up to
/// `max_rows x max_cols`.
pub fn tnn_corpus(seed: u64, count: usize, max_rows: usize, max_cols: usize) -> Vec<Mat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=max_rows);
            let n = rng.random_range(1..=max_cols);
            let factors = rng.random_range(1..=3 * (m + n));
            random_tnn(m, n, rng.random(), factors)
        })
        .collect()
}
