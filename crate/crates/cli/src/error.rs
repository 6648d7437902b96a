//! Error type mapping every failure onto the exit-code contract:
//! 1 = usage error, 2 = numerical/runtime failure, 3 = comparison or
//! acceptance failure.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed protocol/model input, unusable combinations.
    Usage(String),
    /// A computation failed (quadrature, inversion, optimisation, I/O).
    Numerical(String),
    /// A requested analytic-vs-simulation comparison disagreed, or the
    /// acceptance suite reported failures.
    Comparison(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Comparison(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Comparison(msg) => write!(f, "comparison failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qreset_core::Error> for CliError {
    fn from(e: qreset_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("I/O: {e}"))
    }
}
