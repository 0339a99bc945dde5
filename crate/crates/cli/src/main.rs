use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use nopa_bell_cli::config::{Mode, OutputFormat, SweepConfig};
use nopa_bell_cli::sweep::run_to_writer;

const EXIT_CONFIG_ERROR: u8 = 2;
const EXIT_TOLERANCE_FAILURE: u8 = 3;

/// Displaced-parity Bell sweeps for the two-mode squeezed vacuum.
#[derive(Debug, Parser)]
#[command(name = "nopa-bell", version, about)]
struct Args {
    /// What to compute on the grid.
    #[arg(long, value_enum)]
    mode: Mode,

    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    #[arg(long, default_value_t = 3.0)]
    r_max: f64,
    #[arg(long, default_value_t = 61)]
    r_steps: usize,

    #[arg(long, default_value_t = 1e-5)]
    j_min: f64,
    #[arg(long, default_value_t = 0.5)]
    j_max: f64,
    /// Grid size in J (in validate-oracle mode: random pairs per r).
    #[arg(long, default_value_t = 81)]
    j_steps: usize,

    /// Space the J grid logarithmically (the default in surface mode:
    /// the violation region shrinks like e^{-2r}).
    #[arg(long, overrides_with = "linear_j")]
    log_j: bool,
    /// Force a linearly spaced J grid.
    #[arg(long, overrides_with = "log_j")]
    linear_j: bool,

    /// Emit only records with B above this value (surface mode defaults
    /// to 2, the local bound).
    #[arg(long)]
    threshold: Option<f64>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Output file; stdout if omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest tolerated |closed form - oracle| in validate-oracle mode.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,

    /// Simplex restarts per r in quadruplet-search mode.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
}

impl Args {
    fn into_config(self) -> SweepConfig {
        let log_j = if self.linear_j {
            false
        } else {
            self.log_j || self.mode == Mode::Surface
        };
        SweepConfig {
            mode: self.mode,
            r_min: self.r_min,
            r_max: self.r_max,
            r_steps: self.r_steps,
            j_min: self.j_min,
            j_max: self.j_max,
            j_steps: self.j_steps,
            log_j,
            threshold: self.threshold,
            format: self.format,
            seed: self.seed,
            tolerance: self.tolerance,
            restarts: self.restarts,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let output = args.output.clone();
    let config = args.into_config();

    if let Err(err) = config.validate() {
        eprintln!("error: {err}");
        return ExitCode::from(EXIT_CONFIG_ERROR);
    }

    let mut writer: BufWriter<Box<dyn Write>> = match &output {
        Some(path) => match File::create(path) {
            Ok(file) => BufWriter::new(Box::new(file)),
            Err(err) => {
                eprintln!("error: cannot create {}: {err}", path.display());
                return ExitCode::FAILURE;
            }
        },
        None => BufWriter::new(Box::new(io::stdout())),
    };

    match run_to_writer(&config, &mut writer).and_then(|failures| {
        writer.flush()?;
        Ok(failures)
    }) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("error: {failures} row(s) failed the oracle tolerance check");
            ExitCode::from(EXIT_TOLERANCE_FAILURE)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
