//! Exact LU decomposition of totally nonnegative matrices.
//!
//! A matrix `A` of rank `t` lies in the class `M_{r,c}` when its leading
//! minors along the row leaders `r` and column leaders `c` are nonzero and
//! every minor that sits "above" those leaders in the componentwise order
//! vanishes. Such a matrix has exactly one factorisation `A = L U` with `L`
//! lower echelon (leading ones in rows `r`) and `U` upper echelon (leading
//! entries in columns `c`). Every totally nonnegative matrix lies in exactly
//! one such class, and its factors are themselves totally nonnegative.
//!
//! The crate computes that factorisation three ways, all in exact rational
//! arithmetic:
//!
//! - [`explicit_decompose`]: each entry is a ratio of two minors of `A`;
//! - [`reconstruct_lu`]: forward substitution, one row of `U` and one
//!   column of `L` at a time;
//! - [`neville_decompose`]: modified Neville elimination with a replayable
//!   [`NevilleTrace`] (totally nonnegative inputs only).
//!
//! ```
//! use tnlu_core::{detect_class, explicit_decompose, neville_decompose, Mat};
//!
//! let a = Mat::from_rows(&[[0, 0, 0], [1, 0, 1], [1, 0, 1]]);
//! let class = detect_class(&a).unwrap().unwrap();
//! let lu = explicit_decompose(&a, &class).unwrap();
//! assert_eq!(lu.l, Mat::column(&[0, 1, 1]));
//! assert_eq!(lu.u, Mat::from_rows(&[[1, 0, 1]]));
//! assert_eq!(neville_decompose(&a, false).unwrap().0, lu);
//! ```
//!
//! All public indices are 1-based.

pub mod det;
pub mod echelon;
pub mod error;
pub mod explicit;
pub mod identities;
pub mod index;
pub mod matrix;
pub mod mclass;
pub mod neville;
pub mod tnn;

pub use det::{determinant, minor, rank};
pub use echelon::{in_class_l, in_class_u, is_lower_echelon, is_upper_echelon, EchelonReport};
pub use error::{Error, Result};
pub use explicit::{
    explicit_decompose, explicit_decompose_with, reconstruct_lu, reconstruct_lu_with, LUPair, Precondition,
};
pub use identities::{
    cauchy_binet_check, cauchy_binet_sum, laplace_sum_cols, laplace_sum_rows, muir_extend, selftest,
    sylvester_check, vanishing_check, vanishing_check_rows, MinorTerm, SelftestConfig, SelftestReport,
    TermIdentity,
};
pub use index::{indexset_leq, inversion_count, IndexSet, InversionCount};
pub use matrix::{delete_col, delete_row, int, matmul, ratio, submatrix, Mat, Scalar};
pub use mclass::{
    all_classes, detect_class, detect_class_with_limit, in_class_m, in_class_m_with_limit, ClassDesc,
    DEFAULT_BRUTEFORCE_LIMIT,
};
pub use neville::{
    neville_decompose, neville_decompose_with, neville_move, replay, Move, NevilleOptions, NevilleTrace,
};
pub use tnn::{
    cauchon_check, is_tnn, is_tnn_with_limit, is_tp, is_tp_with_limit, random_tnn, tnn_corpus,
    CauchonViolation, MinorWitness, TnnReport, TpReport,
};
