use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("relations contain a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("{what}: size {size} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("map is not order preserving: {0}")]
    NotMonotone(String),

    #[error("not a semiflow: {0}")]
    NotSemiflow(String),

    #[error("map does not belong to this poset")]
    PosetMismatch,

    #[error("invalid removal sequence: {0}")]
    InvalidSequence(String),

    #[error("time must be a non-negative real, got {0}")]
    NegativeTime(f64),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
