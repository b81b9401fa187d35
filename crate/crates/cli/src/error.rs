use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("config: {0}")]
    Invalid(String),
    #[error("{path}:{line}: {msg}")]
    Signal {
        path: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Core(#[from] mexhat_core::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 for numerical or admissibility failures, 2 for anything the user
    /// has to fix in a file.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) | CliError::Failed(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl std::fmt::Display, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
