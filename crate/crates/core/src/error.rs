use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Fock cutoff leaves more probability in the discarded tail than
    /// the caller tolerates.
    #[error("cutoff too small: tail weight {tail_weight:.3e} exceeds tolerance {tolerance:.3e}")]
    CutoffTooSmall { tail_weight: f64, tolerance: f64 },

    /// Successive cutoffs did not stabilize the oracle value.
    #[error("convergence not reached: last delta {delta:.3e} exceeds tolerance {tolerance:.3e}")]
    ConvergenceNotReached { delta: f64, tolerance: f64 },

    /// An expectation value that must be real came out with a non-negligible
    /// imaginary part.
    #[error("imaginary residue {residue:.3e} exceeds the reality check threshold")]
    ImaginaryResidue { residue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
