use thiserror::Error;

use crate::scalar::FieldDesc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix of size {expected}")]
    NotSquare { rows: usize, cols: usize, expected: usize },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldDesc, right: FieldDesc },

    #[error("subspaces {first} and {second} are incomparable, not a chain")]
    NotAChain { first: String, second: String },

    #[error("the zero vector is not allowed here")]
    ZeroVector,

    #[error("vector {vector} lies in the subspace {subspace}")]
    VectorInSubspace { vector: String, subspace: String },

    #[error("vector {vector} is not in the principal subspace N(x)")]
    OutsidePrincipal { vector: String },

    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,

    #[error("operator does not leave chain member {member} invariant")]
    NotInAlgebra { member: usize },

    #[error("operator is not in the strictly triangular ideal")]
    NotInStrictIdeal,

    #[error("operator is in the strictly triangular ideal, no exclusion witness exists")]
    InStrictIdeal,

    #[error("the zero operator has no decomposition")]
    ZeroOperator,

    #[error("subspace is a member of the nest, no reflexivity witness exists")]
    MemberOfNest,

    #[error("operation unsupported over {0}")]
    UnsupportedField(FieldDesc),

    #[error("no member labelled {0}")]
    UnknownMember(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("grading violation: {0}")]
    GradingViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
