use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multidegree length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("the unit ideal is not supported")]
    UnitIdeal,

    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,

    #[error("{count} generators exceed the cap of {cap}")]
    GeneratorCap { count: usize, cap: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("not a covering pair")]
    NotCoveringPair,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
