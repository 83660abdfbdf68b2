use thiserror::Error;

/// Errors produced by geometric computations and input validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),

    #[error("norm variant not supported by {op}")]
    UnsupportedNorm { op: &'static str },

    #[error("vanishing denominator in {0}")]
    VanishingDenominator(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("orthogonal cone came back empty (numerical failure; try a finer resolution)")]
    EmptyCone,

    #[error("not a unit-sphere segment: {0}")]
    NotASegment(String),

    #[error("invalid norm spec: {0}")]
    BadSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
