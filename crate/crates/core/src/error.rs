use thiserror::Error;

use crate::exact::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("radical computation unsupported: {0}")]
    RadicalUnsupported(String),
    #[error("not split: {0}")]
    NotSplit(String),
    #[error("block of size {size} is smaller than {required}")]
    BlockTooSmall { size: usize, required: usize },
    #[error("subspace is not an S-bimodule: {0}")]
    NotBimodule(String),
    #[error("subspace is not closed under the bracket")]
    NotLieClosed,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("operation requires characteristic 0")]
    CharPUnsupported,
    #[error("ad h is not diagonalizable over the integers: {0}")]
    NonDiagonalizable(String),
    #[error("instance too large for exhaustive check: {0}")]
    TooLarge(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
