use thiserror::Error;

use crate::index::IndexSet;

/// Errors raised by the library. Every fallible operation returns one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index sets must be strictly ascending and 1-based, got {0:?}")]
    BadIndexSet(Vec<usize>),

    #[error("cardinality mismatch: {left} vs {right}")]
    Cardinality { left: usize, right: usize },

    #[error("index {index} out of range 1..={bound}")]
    OutOfRange { index: usize, bound: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not in declared class: {0}")]
    NotInClass(String),

    #[error("malformed class descriptor: {0}")]
    BadClass(String),

    #[error("input not totally nonnegative: {0}")]
    NotTnn(String),

    #[error("matrix too large for brute-force enumeration ({size} > {limit}); raise the limit to override")]
    TooLarge { size: usize, limit: usize },

    #[error("neville move precondition failed: {0}")]
    MovePrecondition(String),

    #[error("replay failed at step {step}: {msg}")]
    Replay { step: usize, msg: String },

    #[error("index sets not disjoint: {0} and {1}")]
    NotDisjoint(IndexSet, IndexSet),
}

pub type Result<T> = std::result::Result<T, Error>;
