//! Brute-force verification path in a truncated Fock basis.
//!
//! The two-mode squeezed vacuum is built in Schmidt form
//! `Σ (tanhⁿr / cosh r) |n⟩|n⟩`, displacement and parity operators are
//! constructed as explicit matrices, and the displaced-parity correlation
//! is evaluated by matrix algebra. Nothing here touches the Gaussian
//! closed forms, so agreement between the two routes is a genuine
//! cross-check.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{CorrelationValue, PhasePoint, SqueezeParam};

const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Two-mode state truncated at per-mode Fock cutoff `N` (dimension `N+1`).
///
/// The squeezed vacuum is Schmidt-diagonal, so only the `|n⟩|n⟩`
/// amplitudes are stored; [`TruncatedState::amplitude`] exposes the full
/// two-mode array view.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    cutoff: usize,
    schmidt: Vec<f64>,
    tail_weight: f64,
}

impl TruncatedState {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Real Schmidt coefficients `c_n = tanhⁿr / cosh r`, `n = 0..=N`.
    pub fn schmidt_coefficients(&self) -> &[f64] {
        &self.schmidt
    }

    /// Amplitude of `|n⟩|m⟩`; zero off the Schmidt diagonal.
    pub fn amplitude(&self, n: usize, m: usize) -> Complex64 {
        if n == m && n <= self.cutoff {
            Complex64::new(self.schmidt[n], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Estimated probability discarded by the truncation,
    /// `tanh^{2N+2} r` (geometric tail of the Schmidt spectrum).
    pub fn tail_weight(&self) -> f64 {
        self.tail_weight
    }

    pub fn norm_squared(&self) -> f64 {
        self.schmidt.iter().map(|c| c * c).sum()
    }
}

/// Single-mode operator as a dense `(N+1) x (N+1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    cutoff: usize,
    entries: Array2<Complex64>,
}

impl ModeOperator {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }
}

/// Two-mode squeezed vacuum at cutoff `N`, with the discarded tail checked
/// against `tail_tolerance`.
pub fn build_nopa_state(
    r: SqueezeParam,
    cutoff: usize,
    tail_tolerance: f64,
) -> Result<TruncatedState> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(
            "cutoff must be at least 1".to_string(),
        ));
    }
    let t = r.value().tanh();
    let tail_weight = t.powi(2 * cutoff as i32 + 2);
    if tail_weight > tail_tolerance {
        return Err(Error::CutoffTooSmall {
            tail_weight,
            tolerance: tail_tolerance,
        });
    }
    let sech = 1.0 / r.value().cosh();
    let mut schmidt = Vec::with_capacity(cutoff + 1);
    let mut c = sech;
    for _ in 0..=cutoff {
        schmidt.push(c);
        c *= t;
    }
    Ok(TruncatedState {
        cutoff,
        schmidt,
        tail_weight,
    })
}

/// Smallest cutoff keeping the Schmidt tail below `tail_tolerance`, plus
/// a margin for the support spread caused by the displacements
/// (`ceil(8 (|α|² + |β|²)) + 10`).
pub fn recommended_cutoff(
    r: SqueezeParam,
    alpha: PhasePoint,
    beta: PhasePoint,
    tail_tolerance: f64,
) -> usize {
    let t = r.value().tanh();
    let base = if t == 0.0 {
        1
    } else {
        // tanh^{2N+2} r <= tol  =>  N >= ln(tol) / (2 ln tanh r) - 1
        (tail_tolerance.ln() / (2.0 * t.ln()) - 1.0).ceil().max(1.0) as usize
    };
    let margin = (8.0 * (alpha.modulus_squared() + beta.modulus_squared())).ceil() as usize + 10;
    base + margin
}

/// Real values `e^{-x/2} |α|^a √(n!/(n+a)!) L_n^{(a)}(x)` for `n = 0..count`,
/// computed by the scaled three-term Laguerre recurrence. The recurrence
/// runs on numbers of order one with an explicit log-scale carried on the
/// side, so diagonals whose leading entry underflows (large offset `a`,
/// huge `1/√a!`) still recover their later, representable entries.
fn scaled_laguerre_diagonal(a_off: usize, x: f64, ln_prefix: f64, count: usize) -> Vec<f64> {
    let a = a_off as f64;
    let mut values = Vec::with_capacity(count);
    let mut scale = ln_prefix;
    let mut prev = 0.0f64;
    let mut curr = 1.0f64;
    for n in 0..count {
        values.push(curr * scale.exp());
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + a - x) * curr - (nf * (nf + a)).sqrt() * prev)
            / ((nf + 1.0) * (nf + 1.0 + a)).sqrt();
        prev = curr;
        curr = next;
        let magnitude = curr.abs().max(prev.abs());
        if magnitude > 1e200 {
            scale += magnitude.ln();
            curr /= magnitude;
            prev /= magnitude;
        }
    }
    values
}

/// Matrix elements `⟨m|D(α)|n⟩` of the phase-space displacement operator.
///
/// Built diagonal by diagonal from the closed form
///
/// ```text
/// ⟨n+a|D|n⟩ = √(n!/(n+a)!) α^a e^{-|α|²/2} L_n^{(a)}(|α|²)
/// ⟨n|D|n+a⟩ = √(n!/(n+a)!) (-α*)^a e^{-|α|²/2} L_n^{(a)}(|α|²)
/// ```
///
/// with the Laguerre values advanced in the degree `n` at fixed offset
/// `a`. In that direction the recurrence tracks the dominant solution, so
/// roundoff grows only algebraically with the cutoff; a naive column
/// recurrence blows up past `N ≈ 150`.
pub fn displacement_matrix(alpha: PhasePoint, cutoff: usize) -> Result<ModeOperator> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(
            "cutoff must be at least 1".to_string(),
        ));
    }
    let dim = cutoff + 1;
    let mut entries = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));

    let a = alpha.to_complex();
    if a.norm_sqr() == 0.0 {
        for i in 0..dim {
            entries[[i, i]] = Complex64::new(1.0, 0.0);
        }
        return Ok(ModeOperator {
            cutoff,
            entries,
        });
    }

    let x = a.norm_sqr();
    let ln_mod = a.norm().ln();
    let arg = a.arg();
    let mut ln_fact = 0.0;
    for offset in 0..dim {
        if offset > 0 {
            ln_fact += (offset as f64).ln();
        }
        let ln_prefix = -x / 2.0 + offset as f64 * ln_mod - 0.5 * ln_fact;
        let values = scaled_laguerre_diagonal(offset, x, ln_prefix, dim - offset);
        let lower_phase = Complex64::from_polar(1.0, offset as f64 * arg);
        // (-α*)^a carries the conjugate phase and an alternating sign.
        let upper_sign = if offset % 2 == 0 { 1.0 } else { -1.0 };
        let upper_phase = Complex64::from_polar(upper_sign, -(offset as f64) * arg);
        for (n, &value) in values.iter().enumerate() {
            entries[[n + offset, n]] = value * lower_phase;
            if offset > 0 {
                entries[[n, n + offset]] = value * upper_phase;
            }
        }
    }

    Ok(ModeOperator { cutoff, entries })
}

/// Photon-number parity `(-1)^n̂` as a diagonal matrix.
pub fn parity_matrix(cutoff: usize) -> Result<ModeOperator> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(
            "cutoff must be at least 1".to_string(),
        ));
    }
    let dim = cutoff + 1;
    let mut entries = Array2::from_elem((dim, dim), Complex64::new(0.0, 0.0));
    for n in 0..dim {
        entries[[n, n]] = Complex64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Ok(ModeOperator { cutoff, entries })
}

/// Displaced-parity observable `D(α) (-1)^n̂ D†(α)` built by explicit
/// matrix products. Hermitian up to rounding.
pub fn displaced_parity_observable(alpha: PhasePoint, cutoff: usize) -> Result<Array2<Complex64>> {
    let d = displacement_matrix(alpha, cutoff)?.into_entries();
    // Column scaling by the diagonal parity, then one dense product with D†.
    let mut dp = d.clone();
    for (j, mut col) in dp.columns_mut().into_iter().enumerate() {
        if j % 2 == 1 {
            for v in col.iter_mut() {
                *v = -*v;
            }
        }
    }
    let d_dagger = d.t().mapv(|z| z.conj());
    Ok(dp.dot(&d_dagger))
}

/// Expectation `⟨ψ| D₁(α)(-1)^{n̂₁}D₁†(α) ⊗ D₂(β)(-1)^{n̂₂}D₂†(β) |ψ⟩`
/// on the truncated squeezed vacuum.
///
/// The Schmidt form reduces the two-mode contraction to
/// `Σ_{n,m} c_n c_m A_{nm} B_{nm}` with `A`, `B` the per-mode observable
/// matrices. The result must be real; an imaginary residue above `1e-10`
/// is an error, below it is discarded.
pub fn oracle_correlation(
    r: SqueezeParam,
    alpha: PhasePoint,
    beta: PhasePoint,
    cutoff: usize,
) -> Result<CorrelationValue> {
    let state = build_nopa_state(r, cutoff, 1.0)?;
    let obs_a = displaced_parity_observable(alpha, cutoff)?;
    let obs_b = displaced_parity_observable(beta, cutoff)?;
    let c = state.schmidt_coefficients();

    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..=cutoff {
        for m in 0..=cutoff {
            acc += c[n] * c[m] * obs_a[[n, m]] * obs_b[[n, m]];
        }
    }
    if acc.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue { residue: acc.im.abs() });
    }
    Ok(CorrelationValue::new(acc.re))
}

/// One row of a cutoff-convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub cutoff: usize,
    pub value: f64,
    /// Absolute change from the previous cutoff; `None` on the first row.
    pub delta: Option<f64>,
}

/// Oracle correlation at each cutoff with successive differences, for
/// selecting production cutoffs.
pub fn convergence_report(
    r: SqueezeParam,
    alpha: PhasePoint,
    beta: PhasePoint,
    cutoffs: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    if cutoffs.windows(2).any(|w| w[1] <= w[0]) || cutoffs.is_empty() {
        return Err(Error::InvalidArgument(
            "cutoffs must be non-empty and strictly increasing".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(cutoffs.len());
    let mut previous: Option<f64> = None;
    for &cutoff in cutoffs {
        let value = oracle_correlation(r, alpha, beta, cutoff)?.value();
        rows.push(ConvergenceRow {
            cutoff,
            value,
            delta: previous.map(|p| (value - p).abs()),
        });
        previous = Some(value);
    }
    Ok(rows)
}
