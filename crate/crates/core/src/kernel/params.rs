use alloc::format;

use crate::error::{Error, Result};
use crate::math::TWO_PI;

/// Coefficients `(D, b, r)` of `u_t = D u_xx - b u + r u^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    d: f64,
    b: f64,
    r: f64,
}

impl ModelParams {
    /// Requires `D > 0`, `b > 0` and a finite `r`.
    pub fn new(d: f64, b: f64, r: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::param("D", format!("diffusivity must satisfy D > 0, got {d}")));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::param("b", format!("linear rate must satisfy b > 0, got {b}")));
        }
        if !r.is_finite() {
            return Err(Error::param("r", format!("nonlinear coefficient must be finite, got {r}")));
        }
        Ok(Self { d, b, r })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.d, self.b, r)
    }

    /// `|r| / b < 1`: the regime where the binomial expansion is valid at
    /// every frequency.
    pub fn small_r_valid(&self) -> bool {
        self.r.abs() / self.b < 1.0
    }

    pub fn is_linear(&self) -> bool {
        self.r == 0.0
    }

    /// Spectral symbol `(2 pi s)^2 D + b` of the linear operator.
    pub fn alpha(&self, s: f64) -> f64 {
        let k = TWO_PI * s;
        k * k * self.d + self.b
    }
}
