//! Command-line pipeline around `netinf-core`: generate a ground-truth
//! network, simulate cascades over it, infer the network back from the
//! cascade times, and score the inference. Each stage persists
//! reproducible, digest-audited artifacts.

use core::fmt;

pub mod commands;
pub mod formats;
pub mod manifest;

/// Errors classed by exit code: usage 1, input format 2, runtime 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Format(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Format(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Format(msg) => write!(f, "input format error: {msg}"),
            CliError::Runtime(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
