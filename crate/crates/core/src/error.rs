use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Operation not allowed in the current state, e.g. inserting into a perturbed filter.
    #[error("state error: {0}")]
    State(String),

    #[error("dimension mismatch: {left} bits vs {right} bits")]
    Dimension { left: usize, right: usize },

    #[error("similarity undefined: {0}")]
    UndefinedSimilarity(String),

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("script error at line {line}: {reason}")]
    Script { line: usize, reason: String },

    #[error("node {0} is offline")]
    Offline(String),

    #[error("block {0} unavailable: no online provider")]
    Unavailable(String),

    #[error("access denied for block {0}")]
    AccessDenied(String),

    #[error("stale name record update for {name}: got sequence {got}, expected {expected}")]
    StaleSequence { name: String, got: u64, expected: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
