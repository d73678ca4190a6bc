use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid pairwise matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid score vector: {0}")]
    InvalidScores(String),

    #[error("empty profile")]
    EmptyProfile,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("brute-force Kemeny is limited to m <= {cap} items, got m = {m}")]
    KemenyCap { m: usize, cap: usize },

    #[error("local Kemenization exceeded {sweeps} sweeps")]
    NonTermination { sweeps: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("no connected graph after {attempts} attempts")]
    ConnectivityNotAchieved { attempts: usize },

    #[error("eigen solver failed: {0}")]
    Eigen(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the filesystem rather than by the input values.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
