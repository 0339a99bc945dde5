//! Tensor-product Gauss-Hermite quadrature over `R⁴`, used to verify that
//! the joint Wigner function integrates to one.
//!
//! The integrand's Gaussian weight is absorbed through a linear change of
//! variables `x = M t` supplied by the caller; the quadrature then sums
//! `|det M| Σ ŵ_{i..l} f(M t)` with the weights `ŵ = w e^{t²}` so no
//! underflow occurs in the tails.

use crate::gaussian::wigner;
use crate::types::{PhasePoint, SqueezeParam};

/// Nodes and weights of the `n`-point Gauss-Hermite rule for the weight
/// `e^{-x²}`, found by Newton iteration on the orthonormal Hermite
/// recurrence. Nodes are in decreasing order of magnitude per half; the
/// rule is symmetric.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least a 2-point rule");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    let nf = n as f64;

    let mut z = 0.0f64;
    for i in 0..half {
        // Initial guesses for the roots, largest first.
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            // Orthonormal Hermite recurrence.
            let mut p1 = std::f64::consts::PI.powf(-0.25);
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// Integrate `f` over `R⁴` with an `order⁴` tensor Gauss-Hermite rule
/// after the linear substitution `x = M t` (`x_i = Σ_j M[i][j] t_j`).
///
/// `M` should map the unit Gaussian onto (approximately) the integrand's
/// own Gaussian envelope; accuracy degrades gracefully with mismatch.
pub fn integrate_r4<F>(order: usize, transform: &[[f64; 4]; 4], f: F) -> f64
where
    F: Fn(f64, f64, f64, f64) -> f64,
{
    let (nodes, weights) = gauss_hermite(order);
    // Total weights w e^{t²}: O(1) numbers, no tail underflow.
    let total: Vec<f64> = nodes
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| w * (t * t).exp())
        .collect();
    let jac = det4(transform).abs();

    let mut sum = 0.0;
    for (i, &ti) in nodes.iter().enumerate() {
        for (j, &tj) in nodes.iter().enumerate() {
            let wij = total[i] * total[j];
            for (k, &tk) in nodes.iter().enumerate() {
                let wijk = wij * total[k];
                for (l, &tl) in nodes.iter().enumerate() {
                    let t = [ti, tj, tk, tl];
                    let x: Vec<f64> = transform
                        .iter()
                        .map(|row| row.iter().zip(&t).map(|(m, v)| m * v).sum())
                        .collect();
                    sum += wijk * total[l] * f(x[0], x[1], x[2], x[3]);
                }
            }
        }
    }
    jac * sum
}

/// Linear map whose image of the unit Gaussian is the NOPA Wigner
/// envelope: principal axes `(α∓β*)/√2` with variances `1/(2e^{±2r})`.
pub fn nopa_axes(r: SqueezeParam) -> [[f64; 4]; 4] {
    let narrow = 1.0 / (2.0 * (2.0 * r.value()).exp()).sqrt();
    let wide = 1.0 / (2.0 * (-2.0 * r.value()).exp()).sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // Columns: u, v (narrow), w, z (wide); rows: Re α, Im α, Re β, Im β.
    [
        [narrow * s, 0.0, wide * s, 0.0],
        [0.0, narrow * s, 0.0, wide * s],
        [-narrow * s, 0.0, wide * s, 0.0],
        [0.0, narrow * s, 0.0, -wide * s],
    ]
}

/// `∫∫ W(α; β) d²α d²β` by tensor Gauss-Hermite of the given per-axis
/// order. Equals 1 up to quadrature error.
pub fn nopa_wigner_normalization(r: SqueezeParam, order: usize) -> f64 {
    let axes = nopa_axes(r);
    integrate_r4(order, &axes, |x1, x2, x3, x4| {
        let alpha = PhasePoint::new(x1, x2).expect("quadrature nodes are finite");
        let beta = PhasePoint::new(x3, x4).expect("quadrature nodes are finite");
        wigner(r, alpha, beta)
    })
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        let pivot_row = a[col];
        for row in a.iter_mut().skip(col + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}
