//! Domain value types shared by the Gaussian closed forms and the Fock
//! oracle. Constructors validate the invariants so downstream operations
//! can stay infallible.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point in single-mode phase space: a dimensionless complex
/// coherent-state amplitude, used both as a displacement and as a
/// measurement setting.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    re: f64,
    im: f64,
}

impl PhasePoint {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "phase-space amplitude must be finite, got ({re}, {im})"
            )));
        }
        Ok(Self { re, im })
    }

    /// Purely real amplitude.
    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn modulus_squared(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// Squeezing parameter `r >= 0` of the NOPA state, the dimensionless
/// effective interaction time. `r = 0` is the vacuum; `r -> inf` recovers
/// the singular EPR state.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SqueezeParam {
    r: f64,
}

impl SqueezeParam {
    pub const ZERO: Self = Self { r: 0.0 };

    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "squeezing parameter must be finite and non-negative, got {r}"
            )));
        }
        Ok(Self { r })
    }

    pub fn value(&self) -> f64 {
        self.r
    }
}

/// Expectation value of a product of two dichotomic (±1) observables.
/// For the NOPA closed form the value is a real exponential in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CorrelationValue(f64);

impl CorrelationValue {
    pub(crate) fn new(value: f64) -> Self {
        debug_assert!(
            value.abs() <= 1.0 + 1e-9,
            "correlation out of range: {value}"
        );
        Self(value)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}
