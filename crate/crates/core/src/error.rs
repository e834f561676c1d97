use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the recommendation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge #{index} ({user}, {object}) is out of range for a {n_users}x{n_objects} graph")]
    EdgeOutOfRange {
        index: usize,
        user: usize,
        object: usize,
        n_users: usize,
        n_objects: usize,
    },

    #[error("query ({user}, {object}) is out of range for a {n_users}x{n_objects} graph")]
    QueryOutOfRange {
        user: usize,
        object: usize,
        n_users: usize,
        n_objects: usize,
    },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}: no rating records")]
    EmptyInput(PathBuf),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("data integrity: {0}")]
    DataIntegrity(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
