//! Cross-validation of the Gaussian closed forms against the truncated
//! Fock-space oracle, plus operator-level checks on the matrices.

use ndarray::Array2;
use nopa_bell::{
    build_nopa_state, convergence_report, displaced_parity_observable, displacement_matrix,
    oracle_correlation, parity_correlation, recommended_cutoff, PhasePoint, SqueezeParam,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn sq(r: f64) -> SqueezeParam {
    SqueezeParam::new(r).unwrap()
}

fn pp(re: f64, im: f64) -> PhasePoint {
    PhasePoint::new(re, im).unwrap()
}

fn random_disk_point(rng: &mut impl Rng, radius: f64) -> PhasePoint {
    let rho = radius * rng.gen_range(0.0f64..=1.0).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    pp(rho * theta.cos(), rho * theta.sin())
}

#[test]
fn oracle_agrees_with_closed_form_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let tuples: Vec<(SqueezeParam, PhasePoint, PhasePoint)> = (0..20)
        .map(|_| {
            (
                sq(rng.gen_range(0.0..=1.5)),
                random_disk_point(&mut rng, 1.5),
                random_disk_point(&mut rng, 1.5),
            )
        })
        .collect();

    tuples.par_iter().for_each(|&(r, a, b)| {
        let cutoff = recommended_cutoff(r, a, b, 1e-10);
        let oracle = oracle_correlation(r, a, b, cutoff).unwrap().value();
        let closed = parity_correlation(r, a, b).value();
        assert!(
            (oracle - closed).abs() < 1e-6,
            "r={}, diff={}",
            r.value(),
            (oracle - closed).abs()
        );
    });
}

#[test]
fn displacement_composes_with_its_inverse() {
    let cutoff = 40;
    let a = pp(0.8, -0.5);
    let d_plus = displacement_matrix(a, cutoff).unwrap().into_entries();
    let d_minus = displacement_matrix(pp(-a.re(), -a.im()), cutoff).unwrap().into_entries();
    let product: Array2<Complex64> = d_plus.dot(&d_minus);
    // Away from the truncation edge the product is the identity.
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        for j in 0..20 {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((product[[i, j]] - expect).norm());
        }
    }
    assert!(worst < 1e-10, "worst deviation {worst}");
}

#[test]
fn observable_hermitian_within_tolerance() {
    for (re, im) in [(0.3, 0.0), (0.0, 1.2), (-0.9, 0.7)] {
        let obs = displaced_parity_observable(pp(re, im), 60).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..61 {
            for j in 0..61 {
                worst = worst.max((obs[[i, j]] - obs[[j, i]].conj()).norm());
            }
        }
        assert!(worst < 1e-12, "({re},{im}): hermiticity residue {worst}");
    }
}

#[test]
fn state_normalization_matches_tail() {
    for rv in [0.3, 1.0, 2.0] {
        let state = build_nopa_state(sq(rv), 150, 1.0).unwrap();
        let missing = 1.0 - state.norm_squared();
        assert!(
            (missing - state.tail_weight()).abs() < 1e-12,
            "r={rv}: missing={missing}, tail={}",
            state.tail_weight()
        );
    }
}

#[test]
fn convergence_deltas_shrink() {
    let rows = convergence_report(sq(0.5), pp(0.2, 0.1), pp(-0.3, 0.2), &[10, 20, 40]).unwrap();
    let d1 = rows[1].delta.unwrap();
    let d2 = rows[2].delta.unwrap();
    assert!(d2 < d1, "deltas not shrinking: {d1} then {d2}");
}

#[test]
fn convergence_saturates_at_large_cutoff() {
    // At r = 2 the Schmidt tail drops below 1e-9 only past N ≈ 280;
    // by N = 300 the value is settled to better than 1e-8.
    let rows = convergence_report(sq(2.0), pp(0.1, 0.0), pp(-0.1, 0.0), &[200, 300, 400]).unwrap();
    let last = rows[2].delta.unwrap();
    assert!(last < 1e-8, "final delta {last}");
    let closed = parity_correlation(sq(2.0), pp(0.1, 0.0), pp(-0.1, 0.0)).value();
    assert!((rows[2].value - closed).abs() < 1e-7);
}
