use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit-code contract:
/// `Malformed` is exit 2, `OracleDisagreement` exit 3, `TheoremViolation` exit 4.
/// Relation failures are not errors; they are reported through
/// [`crate::relations::ViolationReport`].
#[derive(Debug, Error)]
pub enum Error {
    /// Input data is shaped wrong: ragged rows, bad sign strings, unparsable
    /// rationals, matrices inconsistent with declared dimensions.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Structurally valid input outside an operation's domain (n = 0,
    /// off-subspace points, mixed posets, zero representation where nonzero
    /// is required).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two independently computed answers disagree.
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),

    /// A consequence that holds for every valid input failed to hold.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// An internal invariant broke. Indicates a bug, never a data error.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
