use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected a homogeneous polynomial of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    /// `q ↦ Δᵏ(P₂ₖ·q)` is not injective on the graded piece of this degree.
    #[error("Fischer operator is singular on degree {degree} (rank {rank} < {size})")]
    SingularFischerOperator { degree: u32, rank: usize, size: usize },

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("Gram matrix is numerically singular (pivot {pivot} at index {index})")]
    IllConditionedGram { index: usize, pivot: f64 },

    #[error("series has no nonzero parts in its tail window; order is 0 and type undefined")]
    AllZeroTail,

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
