use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    /// The Green kernels are singular at r = 0.
    #[error("kernel singularity: r = 0")]
    KernelSingularity,

    #[error("source too close to screen sample: source at ({x}, {y}, {z}) is {distance} m from a sample (minimum {minimum} m)")]
    SourceTooClose {
        x: f64,
        y: f64,
        z: f64,
        distance: f64,
        minimum: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("format error at byte offset {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("truncated field file: expected {expected} bytes, found {actual}")]
    Truncated { expected: u64, actual: u64 },

    #[error("scene parse error on line {line}: {message}")]
    Scene { line: usize, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by malformed or unreadable files.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::Format { .. } | Error::Truncated { .. } | Error::Scene { .. } | Error::Io { .. }
        )
    }
}
