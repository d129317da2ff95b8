use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported algebra type: {0}")]
    UnsupportedType(String),

    #[error("element is not nilpotent")]
    NotNilpotent,

    /// Cannot happen for a nilpotent element of a semisimple algebra.
    #[error("no sl2-triple through the given element: {0}")]
    NoTriple(String),

    #[error("operator does not normalize the isotropy subalgebra")]
    NotHStable,

    #[error("condition I must be part of every constraint set")]
    MissingConditionI,

    #[error("no operator F completes the endomorphism triple")]
    NoFSolution,

    #[error("representation has non-integral weights")]
    NonIntegralWeights,

    #[error("connection map is not a representation")]
    NotRepresentation,

    #[error("orbit file, line {line}: {msg}")]
    OrbitFile { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
