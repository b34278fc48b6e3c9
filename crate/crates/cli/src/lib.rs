//! Command implementations behind the `dlbisim` binary. Every command takes
//! a parsed [`Document`] (or generation parameters) and returns the text to
//! print together with the exit code.

pub mod commands;
pub mod document;

use thiserror::Error;

pub use commands::Output;
pub use document::{Document, Model};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

/// Exit code of a successful or affirmative command.
pub const EXIT_OK: i32 = 0;
/// Exit code of a negative verdict: not bisimilar, not a model, no
/// separating concept.
pub const EXIT_NEGATIVE: i32 = 1;
