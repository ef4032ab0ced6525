//! Error types shared across the crate.

use thiserror::Error;

/// Errors surfaced by the exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field spec: {0}")]
    BadFieldSpec(String),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("input is zero")]
    ZeroInput,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("wild ramification exceeds configured caps")]
    WildUnsupported,
    #[error("series precision exhausted")]
    PrecisionExhausted,
    #[error("insufficient series precision: need {need}, have {have}")]
    InsufficientPrecision { need: i64, have: i64 },
    #[error("no embedding at the place at infinity")]
    NoEmbedding,
    #[error("polynomial is inseparable")]
    Inseparable,
    #[error("element is not invertible; a nontrivial factor was exposed")]
    NotInvertible,
    #[error("no series embedding available for a requested root")]
    EmbeddingUnavailable,
    #[error("points are not pairwise distinct")]
    NotDistinct,
    #[error("the point at infinity is not a valid operand here")]
    InfinityOperand,
    #[error("points are equal")]
    EqualPoints,
    #[error("fiber too small: {0} points")]
    FiberTooSmall(usize),
    #[error("seed point is not wandering")]
    NotWandering,
    #[error("syntax error at offset {0}")]
    SyntaxError(usize),
    #[error("map degree must be at least 2")]
    DegreeTooLow,
    #[error("denominator of the map is identically zero")]
    IdenticallyUndefined,
    #[error("configuration error: {0}")]
    ConfigError(String),
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("internal limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
