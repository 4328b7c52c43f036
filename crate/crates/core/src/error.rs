use thiserror::Error;

/// Errors raised by the engine. Axiom failures are never errors: they are
/// reported as verdicts with witnesses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("infinite-dimensional or bound too small: {0}")]
    NotFiniteDimensional(String),
    #[error("decomposition failed within search budget: {0}")]
    DecompositionFailed(String),
    #[error("not exact at position {position}")]
    NotExact { position: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no realization found within multiplicity bound: {0}")]
    NoRealization(String),
    #[error("f_0 not identity")]
    ConeNotIdentity,
    #[error("precondition a_*δ = c^*δ violated")]
    LiftPrecondition,
    #[error("no lift found: {0}")]
    NoLift(String),
    #[error("characterizations disagree: {0}")]
    CharacterizationsDisagree(String),
    #[error("Ore completion not found within bound: {0}")]
    OreNotFound(String),
    #[error("MR precondition failed: {0}")]
    MrPrecondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Semantic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
