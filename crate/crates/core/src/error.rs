use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),

    #[error("expected monomial generators: {0}")]
    NonMonomial(String),

    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    #[error("generic initial ideal unstable: draws disagree ({0})")]
    GinUnstable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}
