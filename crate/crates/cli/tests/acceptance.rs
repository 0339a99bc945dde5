//! Acceptance suite: one test per exit criterion, each printing a single
//! pass/fail line (run with `-- --nocapture` to see them).

use std::collections::BTreeMap;

use nopa_bell::{
    chsh_paper_form, chsh_value, lhv_identity_check, optimal_j, optimize_quadruplet,
    oracle_correlation, parity_correlation, quadrature, recommended_cutoff,
    DisplacementMagnitude, PhasePoint, Quadruplet, SqueezeParam, TSIRELSON_BOUND,
};
use nopa_bell_cli::config::{Mode, OutputFormat, SweepConfig};
use nopa_bell_cli::sweep::{run, Records};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const ASYMPTOTIC_OPTIMUM: f64 = 2.190550788804438; // 1 + 3 * 2^(-4/3)
const ASYMPTOTIC_J_SCALE: f64 = 0.23104906018664842; // ln(2) / 3

fn sq(r: f64) -> SqueezeParam {
    SqueezeParam::new(r).unwrap()
}

fn pp(re: f64, im: f64) -> PhasePoint {
    PhasePoint::new(re, im).unwrap()
}

fn mag(j: f64) -> DisplacementMagnitude {
    DisplacementMagnitude::new(j).unwrap()
}

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {criterion}: {name} ({detail})");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_asymptotic_optimum() {
    let j = mag(ASYMPTOTIC_J_SCALE * (-16.0f64).exp());
    let b = chsh_paper_form(sq(8.0), j).b;
    let err = (b - ASYMPTOTIC_OPTIMUM).abs();
    report(
        1,
        "asymptotic optimum at r = 8",
        err < 1e-4,
        &format!("B = {b}, |B - (1 + 3*2^(-4/3))| = {err:.3e}"),
    );
}

#[test]
fn criterion_2_optimal_displacement_scaling() {
    let mut detail = String::new();
    let mut pass = true;
    let mut prev_gap = f64::INFINITY;
    for rv in [4.0, 6.0, 8.0] {
        let (jstar, _) = optimal_j(sq(rv));
        let scaled = jstar.value() * (2.0 * rv).exp();
        let gap = (scaled - ASYMPTOTIC_J_SCALE).abs();
        pass &= gap < 1e-3 && gap < prev_gap;
        detail.push_str(&format!("r={rv}: J*e^2r={scaled:.9} "));
        prev_gap = gap;
    }
    report(2, "J* e^{2r} -> ln(2)/3 monotonically", pass, detail.trim());
}

#[test]
fn criterion_3_perfect_pair_correlation() {
    let mut pass = true;
    for rv in [0.0, 1.0, 5.0, 50.0] {
        pass &= parity_correlation(sq(rv), PhasePoint::ZERO, PhasePoint::ZERO).value() == 1.0;
    }
    report(
        3,
        "Pi(0, 0) = 1 exactly for r in {0, 1, 5, 50}",
        pass,
        "exact equality",
    );
}

#[test]
fn criterion_4_local_bound_at_zero_squeezing() {
    let r = sq(0.0);
    let mut max_b = f64::NEG_INFINITY;
    let mut argmax = f64::NAN;
    for i in 0..10_000 {
        let j = i as f64 / 9_999.0;
        let b = chsh_paper_form(r, mag(j)).b;
        if b > max_b {
            max_b = b;
            argmax = j;
        }
    }
    let grid_ok = max_b == 2.0 && argmax == 0.0;
    let search = optimize_quadruplet(r, 8);
    let search_ok = search.b <= 2.0 + 1e-9;
    report(
        4,
        "no violation at r = 0",
        grid_ok && search_ok,
        &format!("grid max B = {max_b} at J = {argmax}, search B = {}", search.b),
    );
}

#[test]
fn criterion_5_oracle_equivalence() {
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tuples: Vec<(f64, PhasePoint, PhasePoint)> = (0..200)
        .map(|_| {
            let draw = |rng: &mut ChaCha8Rng| {
                let rho = 1.5 * rng.gen_range(0.0f64..=1.0).sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                pp(rho * theta.cos(), rho * theta.sin())
            };
            (rng.gen_range(0.0..=2.0), draw(&mut rng), draw(&mut rng))
        })
        .collect();

    let diffs: Vec<(f64, usize)> = tuples
        .par_iter()
        .map(|&(rv, a, b)| {
            let cutoff = recommended_cutoff(sq(rv), a, b, 1e-10);
            let oracle = oracle_correlation(sq(rv), a, b, cutoff).unwrap().value();
            let closed = parity_correlation(sq(rv), a, b).value();
            ((oracle - closed).abs(), cutoff)
        })
        .collect();
    let max_diff = diffs.iter().map(|d| d.0).fold(0.0, f64::max);
    let max_cutoff = diffs.iter().map(|d| d.1).max().unwrap();
    let elapsed = started.elapsed();
    report(
        5,
        "closed form vs Fock oracle on 200 random tuples",
        max_diff < 1e-6 && elapsed.as_secs() < 120,
        &format!("max |diff| = {max_diff:.3e}, max cutoff = {max_cutoff}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_6_wigner_identity_and_normalization() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut max_residue: f64 = 0.0;
    for _ in 0..1000 {
        let r = sq(rng.gen_range(0.0..=10.0));
        let a = pp(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let b = pp(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        max_residue = max_residue.max(lhv_identity_check(r, a, b));
    }
    let identity_ok = max_residue < 1e-14;

    let mut worst_norm_err: f64 = 0.0;
    for rv in [0.0, 0.5, 1.0, 1.5] {
        let norm = quadrature::nopa_wigner_normalization(sq(rv), 40);
        worst_norm_err = worst_norm_err.max((norm - 1.0).abs());
    }
    let norm_ok = worst_norm_err < 1e-6;
    report(
        6,
        "LHV delta identity and Wigner normalization",
        identity_ok && norm_ok,
        &format!("max identity residue = {max_residue:.3e}, max |norm - 1| = {worst_norm_err:.3e}"),
    );
}

#[test]
fn criterion_7_surface_reproduction() {
    let cfg = SweepConfig {
        mode: Mode::Surface,
        r_min: 0.0,
        r_max: 3.0,
        r_steps: 61,
        j_min: 1e-5,
        j_max: 0.5,
        j_steps: 81,
        log_j: true,
        threshold: None,
        format: OutputFormat::Csv,
        seed: 0,
        tolerance: 1e-6,
        restarts: 1,
    };
    let rows = match run(&cfg).records {
        Records::Surface(rows) => rows,
        other => panic!("unexpected records {other:?}"),
    };

    // Group violating rows by r (grid values are exact f64 bit patterns).
    let mut by_row: BTreeMap<u64, Vec<(f64, f64)>> = BTreeMap::new();
    for row in &rows {
        by_row.entry(row.r.to_bits()).or_default().push((row.j, row.b));
    }

    let mut pass = true;
    let mut detail = String::new();
    let mut prev_max = 0.0f64;
    let mut last_max = 0.0f64;
    for &rv in &cfg.r_grid() {
        let entry = by_row.get(&rv.to_bits());
        if rv < 0.1 - 1e-12 {
            continue;
        }
        let Some(points) = entry else {
            pass = false;
            detail.push_str(&format!("empty violation region at r={rv}; "));
            continue;
        };
        // Contains the optimum-curve point.
        let (jstar, _) = optimal_j(sq(rv));
        let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        if !(lo <= jstar.value() && jstar.value() <= hi) {
            pass = false;
            detail.push_str(&format!("J* outside region at r={rv}; "));
        }
        // Per-row maximum climbs toward the asymptote. The log grid
        // samples J* only to ~7% at large r, so allow sampling slack.
        let row_max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        if row_max < prev_max - 2e-3 {
            pass = false;
            detail.push_str(&format!("row max decreased at r={rv}; "));
        }
        prev_max = prev_max.max(row_max);
        last_max = row_max;
    }
    if (last_max - ASYMPTOTIC_OPTIMUM).abs() > 3e-3 {
        pass = false;
        detail.push_str(&format!("final row max {last_max} far from 2.1905; "));
    }
    report(
        7,
        "figure surface landmarks over r in [0, 3]",
        pass,
        if detail.is_empty() {
            "nonempty rows, optimum inside region, row max -> 2.1905"
        } else {
            detail.trim_end()
        },
    );
}

#[test]
fn criterion_8_tsirelson_sanity() {
    let mut worst: f64 = 0.0;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..2000 {
        let r = sq(rng.gen_range(0.0..=6.0));
        let q = Quadruplet::new(
            pp(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            pp(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            pp(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            pp(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        );
        worst = worst.max(chsh_value(r, &q).b.abs());
    }
    for i in 0..200 {
        let r = sq(6.0 * i as f64 / 199.0);
        let (jstar, best) = optimal_j(r);
        worst = worst.max(best.b.abs());
        worst = worst.max(chsh_paper_form(r, jstar).b.abs());
    }
    for rv in [0.0, 0.5, 1.0, 2.0, 5.0] {
        worst = worst.max(optimize_quadruplet(sq(rv), 4).b.abs());
    }

    report(
        8,
        "no |B| above the Tsirelson bound anywhere",
        worst <= TSIRELSON_BOUND + 1e-9,
        &format!("max |B| observed = {worst}"),
    );
}
