//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("number of qubits must be at least {min}, got {got}")]
    InvalidQubitCount { got: usize, min: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle capacity exceeded: {got} qubits (hard cap {max})")]
    CapacityExceeded { got: usize, max: usize },

    #[error("parity block leakage {residual:.3e} exceeds tolerance {tol:.3e}; operator and basis disagree")]
    ParityLeakage { residual: f64, tol: f64 },

    #[error("series too short: need at least {needed} samples, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("no closed-form entry for N = {n_qubits} with initial state {state}")]
    UnsupportedCase { n_qubits: usize, state: &'static str },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
