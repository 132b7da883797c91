//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by constructors and operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes or Hilbert-space dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix that must be Hermitian is not, within tolerance.
    #[error("not Hermitian: max |a_ij - conj(a_ji)| = {deviation:.3e} exceeds {tolerance:.1e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A purported density matrix or pure state violates its invariants.
    #[error("not a quantum state: {0}")]
    InvalidState(String),

    /// A probability vector has negative entries or does not sum to one.
    #[error("not a probability distribution: {0}")]
    InvalidDistribution(String),

    /// POVM elements do not sum to the identity within tolerance.
    #[error("POVM incomplete: max deviation from identity {0:.3e}")]
    IncompletePovm(f64),

    /// A permutation table is not a bijection.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// An operand exceeds the supported size cap.
    #[error("operand too large: {0}")]
    TooLarge(String),

    /// A scalar or label argument is outside its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Exact integer binomials overflow; the log-space path must be used.
    #[error("exact mode overflows for {senders} senders; use the log-space path")]
    ExactModeOverflow { senders: usize },

    /// The Jacobi eigensolver failed to reduce the off-diagonal norm.
    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
