//! Crate-wide error type.

/// Errors reported by the library.
///
/// Validation failures are raised eagerly (bad qubit indices, non-unitary
/// gate matrices, unnormalized injected amplitudes, out-of-range domain
/// parameters) so that numerical routines can assume clean inputs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A gate failed validation (non-unitary matrix, bad wiring).
    #[error("gate rejected: {0}")]
    Gate(String),

    /// A statevector operation was applied to an incompatible state.
    #[error("state operation rejected: {0}")]
    State(String),

    /// The request would exceed the dense-simulation budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Phase-factor optimization finished without certifying the target.
    ///
    /// Carries the best phases found so the caller can inspect them; the
    /// deviation quoted is the certified maximum outside the free band.
    #[error("phase optimization failed to certify: achieved deviation {achieved_delta:.6e}")]
    PhaseOptimization {
        achieved_delta: f64,
        best: Box<crate::qsp::OptimizedPhases>,
    },

    /// Too few usable points to perform a requested fit.
    #[error("fit refused: {0}")]
    FitRefused(String),

    /// Malformed textual input (config files, cached phase artifacts).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
