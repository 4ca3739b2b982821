use std::fmt;

use thiserror::Error;

/// Where an invariant violation was detected, when it came from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub source: String,
    pub line: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.source, self.line)
    }
}

#[derive(Debug, Error)]
pub enum PntError {
    #[error("no local data for p = {p}")]
    MissingLocalData { p: u64 },

    #[error("archimedean parameters of the product cannot be formed: {0}")]
    MissingArchimedeanData(String),

    #[error("X = {x} exceeds the sieve capacity {capacity}")]
    CapacityExceeded { x: f64, capacity: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero dataset is complete to height {height}, but {requested} was requested")]
    IncompleteDataset { requested: f64, height: f64 },

    #[error("{location}: {msg}")]
    Parse { location: Location, msg: String },

    #[error("invariant violated{}: {msg}", .location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default())]
    InvariantViolation {
        location: Option<Location>,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PntError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        PntError::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        PntError::InvariantViolation {
            location: None,
            msg: msg.into(),
        }
    }

    pub(crate) fn parse(source: &str, line: usize, msg: impl Into<String>) -> Self {
        PntError::Parse {
            location: Location {
                source: source.to_string(),
                line,
            },
            msg: msg.into(),
        }
    }

    /// Attach a file location to an invariant violation that lacks one.
    pub(crate) fn at(self, source: &str, line: usize) -> Self {
        match self {
            PntError::InvariantViolation { location: None, msg } => {
                PntError::InvariantViolation {
                    location: Some(Location {
                        source: source.to_string(),
                        line,
                    }),
                    msg,
                }
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, PntError>;
