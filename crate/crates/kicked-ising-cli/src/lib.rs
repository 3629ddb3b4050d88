//! Library half of the command-line tool; `main.rs` only parses arguments
//! and maps [`CliError`] onto the exit-status contract.

pub mod angle;
pub mod commands;
pub mod output;

pub use commands::{run, Cli};

/// Failure modes with their exit codes: usage errors exit 1, verification
/// mismatches exit 2, numerical failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl From<kicked_ising::Error> for CliError {
    fn from(err: kicked_ising::Error) -> Self {
        match err {
            kicked_ising::Error::Numerical(_) | kicked_ising::Error::ParityLeakage { .. } => {
                CliError::Numerical(err.to_string())
            }
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {err}"))
    }
}
