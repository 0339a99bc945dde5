//! Numerics for Bell-inequality violation by the two-mode squeezed vacuum
//! (NOPA) state, measured through displaced parity operators.
//!
//! The state has a positive Gaussian Wigner function, yet the CHSH
//! combination of four displaced-parity correlations exceeds the local
//! bound of 2 and approaches `1 + 3 * 2^(-4/3) ≈ 2.19` at large squeezing.
//!
//! Three routes to the same physics live here:
//!
//! - [`gaussian`]: the closed-form correlation `Π(α; β)` and the joint
//!   Wigner function, assembled in log domain so large squeezing never
//!   overflows.
//! - [`bell`]: CHSH assembly, the exact one-parameter optimum in the
//!   displacement magnitude, and a multistart simplex search over general
//!   quadruplets of settings.
//! - [`fock`]: an independent brute-force oracle in a truncated Fock
//!   basis, with explicit displacement and parity matrices.
//!
//! [`quadrature`] provides tensor-product Gauss-Hermite integration used
//! to verify Wigner-function normalization.

pub mod bell;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod optim;
pub mod quadrature;
pub mod types;

pub use bell::{
    chsh_paper_form, chsh_value, lhv_identity_check, optimal_j, optimize_quadruplet,
    stationarity_log_residual, BellResult, DisplacementMagnitude, Quadruplet, QuadrupletSearch,
    TSIRELSON_BOUND,
};
pub use error::{Error, Result};
pub use fock::{
    build_nopa_state, convergence_report, displaced_parity_observable, displacement_matrix,
    oracle_correlation, parity_matrix, recommended_cutoff, ConvergenceRow, ModeOperator,
    TruncatedState,
};
pub use gaussian::{log_parity_correlation, parity_correlation, wigner, WIGNER_SCALE};
pub use types::{CorrelationValue, PhasePoint, SqueezeParam};
