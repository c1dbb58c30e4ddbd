//! Determinants, minors and rank.
//!
//! Everything goes through fraction-free Bareiss elimination on an integer
//! lift: each row is scaled by the lcm of its denominators, the integer
//! determinant is computed, and the row scales are divided back out.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::{Mat, Scalar};

/// Integer lift of a matrix: `rows[r][c] = a[r][c] * scale[r]`.
fn integer_lift(a: &Mat) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale_product = BigInt::one();
    let mut rows = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let lcm = a.row_denominator_lcm(r);
        let row = (0..a.cols())
            .map(|c| {
                let x = a.at(r, c);
                x.numer() * (&lcm / x.denom())
            })
            .collect();
        rows.push(row);
        scale_product *= lcm;
    }
    (rows, scale_product)
}

/// Bareiss elimination in place. Returns the rank and, if the matrix is
/// square, the determinant. Row swaps are used for pivoting only.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows {
        if rows == 0 {
            BigInt::one()
        } else {
            let d = m[rows - 1][cols - 1].clone();
            if negate {
                -d
            } else {
                d
            }
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Exact determinant of a square matrix; `det` of the `0 x 0` matrix is 1.
pub fn determinant(a: &Mat) -> Result<Scalar> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "determinant of non-square {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let (mut rows, scale) = integer_lift(a);
    let (_, det) = bareiss(&mut rows, a.cols());
    Ok(Scalar::new(det, scale))
}

/// The minor `[I|J]_A`. The empty minor is 1.
pub fn minor(a: &Mat, rows: &IndexSet, cols: &IndexSet) -> Result<Scalar> {
    if rows.len() != cols.len() {
        return Err(Error::Cardinality {
            left: rows.len(),
            right: cols.len(),
        });
    }
    rows.check_bound(a.rows())?;
    cols.check_bound(a.cols())?;
    Ok(minor_unchecked(a, rows.as_slice(), cols.as_slice()))
}

/// Minor without bounds or cardinality checks. Indices are 1-based.
pub(crate) fn minor_unchecked(a: &Mat, rows: &[usize], cols: &[usize]) -> Scalar {
    match rows.len() {
        0 => Scalar::one(),
        1 => a.at(rows[0] - 1, cols[0] - 1).clone(),
        2 => {
            let (r0, r1) = (rows[0] - 1, rows[1] - 1);
            let (c0, c1) = (cols[0] - 1, cols[1] - 1);
            a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0)
        }
        _ => {
            let sub = a.submatrix_unchecked(rows, cols);
            let (mut lifted, scale) = integer_lift(&sub);
            let (_, det) = bareiss(&mut lifted, sub.cols());
            Scalar::new(det, scale)
        }
    }
}

/// Exact rank over the rationals.
pub fn rank(a: &Mat) -> usize {
    let (mut rows, _) = integer_lift(a);
    bareiss(&mut rows, a.cols()).0
}

/// `true` when `[I|J]_A` is nonzero. Panics on malformed input (internal use).
pub(crate) fn minor_nonzero(a: &Mat, rows: &[usize], cols: &[usize]) -> bool {
    !minor_unchecked(a, rows, cols).is_zero()
}
