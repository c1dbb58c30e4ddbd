//! Shared inputs for the criterion benchmarks.

use tnlu_core::{detect_class, random_tnn, ClassDesc, Mat};

/// A seeded `n x n` TNN matrix.
pub fn tnn_matrix(n: usize) -> Mat {
    random_tnn(n, n, 0x5eed + n as u64, 4 * n)
}

/// Seeded TNN matrices of the given square sizes with their classes.
/// Sizes must be within the brute-force limit.
pub fn fixtures(sizes: &[usize]) -> Vec<(usize, Mat, ClassDesc)> {
    sizes
        .iter()
        .map(|&n| {
            let a = tnn_matrix(n);
            let d = detect_class(&a).expect("within limit").expect("TNN has a class");
            (n, a, d)
        })
        .collect()
}
