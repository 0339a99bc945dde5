//! Library side of the sweep CLI: configuration, grid runners, and
//! deterministic CSV/JSON rendering. The binary in `main.rs` is a thin
//! argument-parsing shell over [`sweep::run_to_writer`].

pub mod config;
pub mod sweep;

pub use config::{ConfigError, Mode, OutputFormat, SweepConfig};
pub use sweep::{run, run_to_writer, Records, SweepOutcome};
