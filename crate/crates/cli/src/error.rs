use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{0}")]
    Core(#[from] carleson::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_DOMAIN,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Extra advice printed after the message, if any.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(carleson::Error::BoundaryGuard { .. }) => Some("use fewer points or a smaller ratio"),
            _ => None,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
