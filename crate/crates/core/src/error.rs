use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its admissible domain (e.g. `r` outside the
    /// activation's interval, `s <= 1`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent or missing configuration (empty grid, `m = 0`, missing
    /// training data for a data-dependent strategy, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A caller broke an operation's precondition (shape mismatch,
    /// non-finite values, out-of-range inputs).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    /// Requested output is not defined for this model (curve export above 2-D).
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("model format error: {0}")]
    Format(String),

    #[error("unsupported model file version {found} (this build reads up to {supported})")]
    Version { found: u32, supported: u32 },

    #[error("I/O error on {path}: {source}")]
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

    /// True for errors caused by how the operation was invoked rather than by
    /// what happened while running it. The CLI maps these to exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
