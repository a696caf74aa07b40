use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field of size {size} exceeds the supported cap of {cap}")]
    SizeCapExceeded { size: u128, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field towers")]
    MixedTowers,
    #[error("vector length {got} does not match the expected length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("enumeration requires {required} codewords, above the cap of {cap}")]
    EnumerationCapExceeded { required: u128, cap: u64 },
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("extended row count t={t} must satisfy 1 <= t <= k={k}")]
    BadT { t: usize, k: usize },
    #[error("invalid matrix dimensions: {0}")]
    BadDimensions(String),
    #[error("dimension k={k} is invalid here: {reason}")]
    BadK { k: usize, reason: &'static str },
    #[error("{got} blocks requested but at most {max} distinct nonzero norms exist")]
    TooManyBlocks { got: usize, max: usize },
    #[error("block scalars {i} and {j} have equal norms")]
    NormCollision { i: usize, j: usize },
    #[error("{r} does not divide the extension degree {m}")]
    NotSubfieldDegree { r: usize, m: usize },
    #[error("the alpha vector is not linearly independent over the base field")]
    DependentAlphas,
    #[error("gamma scalars {i} and {j} span the same projective point")]
    ProjectiveCollision { i: usize, j: usize },
    #[error("degenerate tail: {0}")]
    BadTail(&'static str),
    #[error("lattice property violated: {0}")]
    LatticePropertyViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid JSON input: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
