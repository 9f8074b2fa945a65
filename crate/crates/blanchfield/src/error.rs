use thiserror::Error;

/// Errors surfaced by the exact-arithmetic engine.
///
/// Variants split into two families: structural/validation failures
/// (dimension or variable mismatches, malformed input) and mathematical
/// domain failures (singular matrix where an inverse is required,
/// non-torsion vectors fed to the pairing, symmetrization obstruction).
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no unit decomposition")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("variable count mismatch: expected {expected}, got {got}")]
    NvarsMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("matrix is not hermitian: entry ({row},{col}) is not the conjugate of ({col},{row})")]
    NonHermitian { row: usize, col: usize },

    #[error("entry at {context} does not lie in Lambda_S")]
    NotLambdaS { context: String },

    #[error("singular matrix (rank {rank} of {size}) where an inverse is required")]
    SingularMatrix { rank: usize, size: usize },

    #[error(
        "vector is not torsion: rank of H^T is {rank_h} but rank of the augmented [H^T | v] is {rank_augmented}"
    )]
    NonTorsion { rank_h: usize, rank_augmented: usize },

    #[error("torsion order cannot be symmetrized: {detail}")]
    SymmetrizationFailed { detail: String },

    #[error("minor enumeration rejected: matrix size {size} exceeds the guard {max}")]
    MinorsTooLarge { size: usize, max: usize },

    #[error("expected a unit of Lambda_S: {context}")]
    NotAUnit { context: String },

    #[error("Seifert family invalid: {context}")]
    BadFamily { context: String },

    #[error("boundary Seifert matrix invalid: block ({i},{j}) is not the transpose of block ({j},{i})")]
    BlockSymmetry { i: usize, j: usize },

    #[error("invalid argument: {context}")]
    InvalidArgument { context: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
