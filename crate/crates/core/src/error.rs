use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// The CLI maps [`Error::exit_code`] onto process exit statuses, so the
/// variants are grouped by class: bad input (1) versus numerical trouble (2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical error: {message} (condition estimate {condition:e})")]
    Numerical { message: String, condition: f64 },

    #[error("objective returned non-finite value {value} at position {position:?}")]
    Evaluation { position: Vec<f64>, value: f64 },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse(_) | Error::Io { .. } => 1,
            Error::Numerical { .. } | Error::Evaluation { .. } => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
