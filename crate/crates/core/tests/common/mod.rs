#![allow(dead_code)]

use num::{One, Signed, Zero};
use proptest::prelude::*;
use tnlu_core::{ratio, IndexSet, Mat, Scalar};

/// Laplace expansion along the first row. Independent of the Bareiss path.
pub fn cofactor_det(a: &Mat) -> Scalar {
    let n = a.rows();
    assert_eq!(n, a.cols());
    if n == 0 {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for j in 1..=n {
        if a[(1, j)].is_zero() {
            continue;
        }
        let sub = a.delete_row(1).unwrap().delete_col(j).unwrap();
        let term = &a[(1, j)] * cofactor_det(&sub);
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn cofactor_minor(a: &Mat, rows: &IndexSet, cols: &IndexSet) -> Scalar {
    cofactor_det(&a.submatrix(rows, cols).unwrap())
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn gauss_rank(a: &Mat) -> usize {
    let mut rows = a.row_vecs();
    let cols = a.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.to_vec()).unwrap()
}

/// Every minor of `a` that is negative.
pub fn has_negative_minor(a: &Mat) -> bool {
    for k in 1..=a.rows().min(a.cols()) {
        for i in IndexSet::combinations(a.rows(), k) {
            for j in IndexSet::combinations(a.cols(), k) {
                if cofactor_minor(a, &i, &j).is_negative() {
                    return true;
                }
            }
        }
    }
    false
}

pub fn entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        2 => Just(Scalar::zero()),
        5 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q)),
    ]
}

pub fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| Mat::from_vec(rows, cols, v).unwrap())
}

pub fn square(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max).prop_flat_map(|n| mat(n, n))
}

pub fn any_mat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| mat(m, n))
}

/// `(m, n, seed, factors)` for [`tnlu_core::random_tnn`].
pub fn tnn_params(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (usize, usize, u64, usize)> {
    (1..=max_rows, 1..=max_cols, any::<u64>(), 1usize..30)
}

/// A random subset of `{1..n}` as a strategy.
pub fn subset(n: usize) -> impl Strategy<Value = IndexSet> {
    prop::collection::vec(any::<bool>(), n).prop_map(|bits| {
        IndexSet::new(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i + 1)
                .collect(),
        )
        .unwrap()
    })
}

pub fn cryer() -> Mat {
    Mat::from_rows(&[[0, 0, 0], [1, 0, 1], [1, 0, 1]])
}

pub fn four() -> Mat {
    Mat::from_rows(&[[0, 1, 2, 1], [0, 2, 4, 2], [0, 1, 2, 3], [0, 3, 6, 11]])
}
