use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A flag value that parsed but is not acceptable.
    #[error("invalid value for {flag}: {message}")]
    InvalidArgument { flag: &'static str, message: String },

    #[error("{context} {}: {source}", path.display())]
    Io {
        context: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed input {}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Walk(#[from] fibwalk::Error),
}

impl CliError {
    pub fn invalid(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::InvalidArgument {
            flag,
            message: message.into(),
        }
    }

    /// 2 for rejected arguments or inputs, 3 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::InvalidArgument { .. } | CliError::Parse { .. } | CliError::Walk(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
