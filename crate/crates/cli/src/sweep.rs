//! Sweep execution: grid evaluation (parallel, deterministic order) and
//! CSV/JSON rendering.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use nopa_bell::{
    chsh_paper_form, optimal_j, oracle_correlation, parity_correlation, recommended_cutoff,
    DisplacementMagnitude, PhasePoint, QuadrupletSearch, SqueezeParam,
};

use crate::config::{Mode, OutputFormat, SweepConfig, MAX_ORACLE_CUTOFF};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurfaceRecord {
    pub r: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub violates: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OptimumRecord {
    pub r: f64,
    #[serde(rename = "J_star")]
    pub j_star: f64,
    #[serde(rename = "B_star")]
    pub b_star: f64,
    #[serde(rename = "J_star_times_e2r")]
    pub j_star_times_e2r: f64,
    pub violates: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateRecord {
    pub r: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub cutoff: usize,
    pub closed_form: f64,
    pub oracle: f64,
    pub abs_diff: f64,
    /// "ok", "tolerance-exceeded", or "cutoff-too-small".
    pub status: String,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadrupletRecord {
    pub r: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub violates: bool,
    pub converged: bool,
    pub alpha1_re: f64,
    pub alpha1_im: f64,
    pub alpha2_re: f64,
    pub alpha2_im: f64,
    pub beta1_re: f64,
    pub beta1_im: f64,
    pub beta2_re: f64,
    pub beta2_im: f64,
}

#[derive(Debug, Clone)]
pub enum Records {
    Surface(Vec<SurfaceRecord>),
    Optimum(Vec<OptimumRecord>),
    Validate(Vec<ValidateRecord>),
    Quadruplet(Vec<QuadrupletRecord>),
}

impl Records {
    pub fn len(&self) -> usize {
        match self {
            Records::Surface(v) => v.len(),
            Records::Optimum(v) => v.len(),
            Records::Validate(v) => v.len(),
            Records::Quadruplet(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of a sweep: records plus the count of validate rows that
/// failed (tolerance exceeded or oracle unavailable).
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Records,
    pub failures: usize,
}

fn sq(r: f64) -> SqueezeParam {
    SqueezeParam::new(r).expect("validated grid")
}

/// Per-point RNG seed: splitmix64 of the base seed and the point index,
/// so parallel evaluation order never affects the draws.
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run(config: &SweepConfig) -> SweepOutcome {
    match config.mode {
        Mode::Surface => SweepOutcome {
            records: Records::Surface(surface_records(config)),
            failures: 0,
        },
        Mode::OptimumCurve => SweepOutcome {
            records: Records::Optimum(optimum_records(config)),
            failures: 0,
        },
        Mode::ValidateOracle => {
            let records = validate_records(config);
            let failures = records.iter().filter(|row| row.status != "ok").count();
            SweepOutcome {
                records: Records::Validate(records),
                failures,
            }
        }
        Mode::QuadrupletSearch => SweepOutcome {
            records: Records::Quadruplet(quadruplet_records(config)),
            failures: 0,
        },
    }
}

/// `B = chsh_paper_form(r, J)` on the grid, row-major in (r, J),
/// filtered by the effective threshold.
pub fn surface_records(config: &SweepConfig) -> Vec<SurfaceRecord> {
    let r_grid = config.r_grid();
    let j_grid = config.j_grid();
    let threshold = config.effective_threshold();
    let points: Vec<(f64, f64)> = r_grid
        .iter()
        .flat_map(|&r| j_grid.iter().map(move |&j| (r, j)))
        .collect();
    points
        .par_iter()
        .map(|&(r, j)| {
            let res = chsh_paper_form(sq(r), DisplacementMagnitude::new(j).expect("validated"));
            SurfaceRecord {
                r,
                j,
                b: res.b,
                violates: res.violates_local_bound,
            }
        })
        .filter(|rec| threshold.is_none_or(|t| rec.b > t))
        .collect()
}

/// `(J*, B*)` per r, plus `J* e^{2r}` so the approach to `(ln 2)/3` is
/// visible directly in the output.
pub fn optimum_records(config: &SweepConfig) -> Vec<OptimumRecord> {
    config
        .r_grid()
        .par_iter()
        .map(|&r| {
            let (jstar, best) = optimal_j(sq(r));
            OptimumRecord {
                r,
                j_star: jstar.value(),
                b_star: best.b,
                j_star_times_e2r: jstar.value() * (2.0 * r).exp(),
                violates: best.violates_local_bound,
            }
        })
        .collect()
}

/// Closed form vs Fock oracle on random displacement pairs: `j_steps`
/// pairs per r, drawn from the disk |α| <= 1.5 with per-row seeds.
pub fn validate_records(config: &SweepConfig) -> Vec<ValidateRecord> {
    let r_grid = config.r_grid();
    let samples = config.j_steps;
    let tail_tolerance = (config.tolerance * 1e-4).min(1e-10);
    let points: Vec<(usize, f64)> = r_grid
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..samples).map(move |s| (i * samples + s, r)))
        .collect();

    points
        .par_iter()
        .map(|&(index, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, index as u64));
            let draw = |rng: &mut ChaCha8Rng| {
                let rho = 1.5 * rng.gen_range(0.0f64..=1.0).sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                PhasePoint::new(rho * theta.cos(), rho * theta.sin()).expect("finite draw")
            };
            let alpha = draw(&mut rng);
            let beta = draw(&mut rng);
            let closed = parity_correlation(sq(r), alpha, beta).value();
            let cutoff = recommended_cutoff(sq(r), alpha, beta, tail_tolerance);
            if cutoff > MAX_ORACLE_CUTOFF {
                return ValidateRecord {
                    r,
                    alpha_re: alpha.re(),
                    alpha_im: alpha.im(),
                    beta_re: beta.re(),
                    beta_im: beta.im(),
                    cutoff,
                    closed_form: closed,
                    oracle: f64::NAN,
                    abs_diff: f64::NAN,
                    status: "cutoff-too-small".to_string(),
                };
            }
            let oracle = oracle_correlation(sq(r), alpha, beta, cutoff)
                .expect("oracle within validated range")
                .value();
            let abs_diff = (oracle - closed).abs();
            ValidateRecord {
                r,
                alpha_re: alpha.re(),
                alpha_im: alpha.im(),
                beta_re: beta.re(),
                beta_im: beta.im(),
                cutoff,
                closed_form: closed,
                oracle,
                abs_diff,
                status: if abs_diff <= config.tolerance {
                    "ok".to_string()
                } else {
                    "tolerance-exceeded".to_string()
                },
            }
        })
        .collect()
}

/// Best general quadruplet per r from the multistart simplex search.
pub fn quadruplet_records(config: &SweepConfig) -> Vec<QuadrupletRecord> {
    config
        .r_grid()
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            let search = QuadrupletSearch {
                restarts: config.restarts,
                seed: mix_seed(config.seed, i as u64),
                ..Default::default()
            };
            let res = search.run(sq(r));
            let q = res.quadruplet;
            QuadrupletRecord {
                r,
                b: res.b,
                violates: res.violates_local_bound,
                converged: res.converged,
                alpha1_re: q.alpha1.re(),
                alpha1_im: q.alpha1.im(),
                alpha2_re: q.alpha2.re(),
                alpha2_im: q.alpha2.im(),
                beta1_re: q.beta1.re(),
                beta1_im: q.beta1.im(),
                beta2_re: q.beta2.re(),
                beta2_im: q.beta2.im(),
            }
        })
        .collect()
}

/// Run the sweep and serialize it. Returns the count of failed rows.
pub fn run_to_writer(config: &SweepConfig, out: &mut dyn Write) -> io::Result<usize> {
    let outcome = run(config);
    match config.format {
        OutputFormat::Csv => write_csv(&outcome.records, out)?,
        OutputFormat::Json => write_json(config, &outcome.records, out)?,
    }
    Ok(outcome.failures)
}

/// UTF-8, comma separators, header row, LF endings; floats as shortest
/// round-trip decimals.
pub fn write_csv(records: &Records, out: &mut dyn Write) -> io::Result<()> {
    match records {
        Records::Surface(rows) => {
            out.write_all(b"r,J,B,violates\n")?;
            for row in rows {
                writeln!(out, "{},{},{},{}", row.r, row.j, row.b, row.violates)?;
            }
        }
        Records::Optimum(rows) => {
            out.write_all(b"r,J_star,B_star,J_star_times_e2r,violates\n")?;
            for row in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.r, row.j_star, row.b_star, row.j_star_times_e2r, row.violates
                )?;
            }
        }
        Records::Validate(rows) => {
            out.write_all(
                b"r,alpha_re,alpha_im,beta_re,beta_im,cutoff,closed_form,oracle,abs_diff,status\n",
            )?;
            for row in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    row.r,
                    row.alpha_re,
                    row.alpha_im,
                    row.beta_re,
                    row.beta_im,
                    row.cutoff,
                    row.closed_form,
                    row.oracle,
                    row.abs_diff,
                    row.status
                )?;
            }
        }
        Records::Quadruplet(rows) => {
            out.write_all(
                b"r,B,violates,converged,alpha1_re,alpha1_im,alpha2_re,alpha2_im,beta1_re,beta1_im,beta2_re,beta2_im\n",
            )?;
            for row in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    row.r,
                    row.b,
                    row.violates,
                    row.converged,
                    row.alpha1_re,
                    row.alpha1_im,
                    row.alpha2_re,
                    row.alpha2_im,
                    row.beta1_re,
                    row.beta1_im,
                    row.beta2_re,
                    row.beta2_im
                )?;
            }
        }
    }
    Ok(())
}

/// `{"config": ..., "records": [...]}` with the same field names as CSV.
pub fn write_json(config: &SweepConfig, records: &Records, out: &mut dyn Write) -> io::Result<()> {
    #[derive(Serialize)]
    struct Document<'a, T: Serialize> {
        config: &'a SweepConfig,
        records: &'a [T],
    }
    fn render(out: &mut dyn Write, value: serde_json::Result<String>) -> io::Result<()> {
        let body = value.map_err(io::Error::other)?;
        out.write_all(body.as_bytes())?;
        out.write_all(b"\n")
    }
    match records {
        Records::Surface(rows) => render(
            out,
            serde_json::to_string_pretty(&Document {
                config,
                records: rows,
            }),
        ),
        Records::Optimum(rows) => render(
            out,
            serde_json::to_string_pretty(&Document {
                config,
                records: rows,
            }),
        ),
        Records::Validate(rows) => render(
            out,
            serde_json::to_string_pretty(&Document {
                config,
                records: rows,
            }),
        ),
        Records::Quadruplet(rows) => render(
            out,
            serde_json::to_string_pretty(&Document {
                config,
                records: rows,
            }),
        ),
    }
}
