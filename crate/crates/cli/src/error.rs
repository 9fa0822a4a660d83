use std::fmt;

use thiserror::Error;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{at}: {message}")]
    Parse { at: Location, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gradcan::Error),
}

impl CliError {
    pub fn parse(at: Location, message: impl Into<String>) -> Self {
        CliError::Parse {
            at,
            message: message.into(),
        }
    }

    /// Prefixes parse locations with a file name.
    pub fn in_file(self, path: &str) -> Self {
        match self {
            CliError::Parse { at, message } => CliError::Usage(format!("{path}:{at}: {message}")),
            other => other,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
