use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{context}: {source}")]
    Validation {
        context: String,
        #[source]
        source: ur_core::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown demo case '{0}' (expected gram-example, pauli-equalities, square-order-counterexample or pinching-identity)")]
    UnknownCase(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    pub(crate) fn validation(context: impl Into<String>, source: ur_core::Error) -> Self {
        CliError::Validation {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn parse(source_name: &str, e: serde_json::Error) -> Self {
        CliError::Parse {
            source_name: source_name.to_string(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()).to_string(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// serde_json appends " at line L column C" to its messages.
fn strip_position(msg: &str) -> &str {
    match msg.rfind(" at line ") {
        Some(i) => &msg[..i],
        None => msg,
    }
}
