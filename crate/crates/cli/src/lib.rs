//! Command implementations behind the `wfeq` binary.

pub mod args;
pub mod commands;
pub mod output;
pub mod reference;
pub mod validate;

use std::fmt;

pub use args::Cli;
pub use commands::run;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INADMISSIBLE: i32 = 2;
    pub const SINGULAR: i32 = 3;
    pub const NOT_CONVERGED: i32 = 4;
    pub const VALIDATION_FAILED: i32 = 5;
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<wfeq_core::Error> for CliError {
    fn from(e: wfeq_core::Error) -> Self {
        use wfeq_core::Error as E;
        let code = match e {
            E::InadmissibleEquilibrium { .. } | E::OutOfRangeDirection { .. } => exit::INADMISSIBLE,
            E::SingularDirectionMatrix { .. } => exit::SINGULAR,
            _ => exit::USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<wfeq_core::ModelFileError> for CliError {
    fn from(e: wfeq_core::ModelFileError) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}
