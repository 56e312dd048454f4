use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed XML at line {line}: {message}")]
    Xml { line: u32, message: String },

    #[error("schema violation in <{element}>: {message}")]
    Schema { element: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("vocabulary is empty: no document contains any term")]
    EmptyVocabulary,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed {what}: {message}")]
    Format { what: &'static str, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 3 for an empty corpus, 2 for every
    /// other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptyVocabulary | Error::Degenerate(_) => 3,
            _ => 2,
        }
    }
}
