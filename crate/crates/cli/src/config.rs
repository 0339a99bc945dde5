//! Sweep configuration: grids, mode, output, reproducibility knobs.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// CHSH combination over the (r, J) grid, filtered by threshold.
    Surface,
    /// Optimal displacement magnitude and combination value per r.
    OptimumCurve,
    /// Closed form vs Fock oracle comparisons; nonzero exit on mismatch.
    ValidateOracle,
    /// Multistart search over general quadruplets per r.
    QuadrupletSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Validate-oracle rows are rejected above this squeezing: the required
/// Fock cutoff grows like e^{2r} and the oracle stops being desk-scale.
pub const MAX_ORACLE_SQUEEZING: f64 = 3.0;

/// Hard ceiling on the per-mode Fock dimension used by validate-oracle;
/// rows that would need more surface a cutoff-too-small status.
pub const MAX_ORACLE_CUTOFF: usize = 700;

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub mode: Mode,
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    pub j_min: f64,
    pub j_max: f64,
    /// Grid size in J; in validate-oracle mode this is the number of
    /// random displacement pairs drawn per r.
    pub j_steps: usize,
    pub log_j: bool,
    /// Emit only records with B above this value. Surface mode defaults
    /// to the local bound 2.
    pub threshold: Option<f64>,
    pub format: OutputFormat,
    pub seed: u64,
    /// Largest tolerated |closed form − oracle| in validate-oracle mode.
    pub tolerance: f64,
    /// Restarts of the simplex search in quadruplet-search mode.
    pub restarts: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("validate-oracle requires r_max <= {MAX_ORACLE_SQUEEZING}, got {0}")]
    OracleRange(f64),
    #[error("{0}")]
    Other(String),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, min, max, steps) in [
            ("r", self.r_min, self.r_max, self.r_steps),
            ("J", self.j_min, self.j_max, self.j_steps),
        ] {
            if !(min.is_finite() && max.is_finite()) {
                return Err(ConfigError::Grid(format!("{name} bounds must be finite")));
            }
            if min > max {
                return Err(ConfigError::Grid(format!(
                    "{name}_min ({min}) exceeds {name}_max ({max})"
                )));
            }
            if steps < 1 {
                return Err(ConfigError::Grid(format!("{name}_steps must be >= 1")));
            }
        }
        if self.r_min < 0.0 {
            return Err(ConfigError::Grid("r_min must be >= 0".to_string()));
        }
        if self.j_min < 0.0 {
            return Err(ConfigError::Grid("J_min must be >= 0".to_string()));
        }
        if self.log_j && self.j_min <= 0.0 {
            return Err(ConfigError::Grid(
                "log-spaced J grid requires J_min > 0".to_string(),
            ));
        }
        if self.mode == Mode::ValidateOracle && self.r_max > MAX_ORACLE_SQUEEZING {
            return Err(ConfigError::OracleRange(self.r_max));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(ConfigError::Other("tolerance must be positive".to_string()));
        }
        if self.restarts < 1 {
            return Err(ConfigError::Other("restarts must be >= 1".to_string()));
        }
        Ok(())
    }

    pub fn r_grid(&self) -> Vec<f64> {
        linear_grid(self.r_min, self.r_max, self.r_steps)
    }

    pub fn j_grid(&self) -> Vec<f64> {
        if self.log_j {
            geometric_grid(self.j_min, self.j_max, self.j_steps)
        } else {
            linear_grid(self.j_min, self.j_max, self.j_steps)
        }
    }

    /// The filter actually applied in surface mode: the configured value,
    /// defaulting to the local bound.
    pub fn effective_threshold(&self) -> Option<f64> {
        match self.mode {
            Mode::Surface => Some(self.threshold.unwrap_or(2.0)),
            _ => self.threshold,
        }
    }
}

fn linear_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn geometric_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    let ratio = (max / min).ln();
    (0..steps)
        .map(|i| min * (ratio * i as f64 / (steps - 1) as f64).exp())
        .collect()
}
