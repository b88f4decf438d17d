use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A rational denominator came too close to zero.
    #[error("pole{}: |denominator| = {magnitude:e} at s = {s}, t = {t}", match .iteration { Some(n) => alloc::format!(" in iteration {n}"), None => String::new() })]
    Pole { iteration: Option<usize>, s: f64, t: f64, magnitude: f64 },

    #[error("binomial expansion diverges: |r zeta| = {ratio} at s = {s}, t = {t}")]
    Divergent { s: f64, t: f64, ratio: f64 },

    #[error("spectrum is not conjugate-symmetric: imaginary residual {residual:e}")]
    NonHermitian { residual: f64 },

    #[error("finite-difference march diverged at step {step}: |u| = {magnitude:e}")]
    Blowup { step: usize, magnitude: f64 },

    #[error("time quadrature unresolved: error estimate {estimate:e} exceeds {tolerance:e}")]
    QuadratureUnresolved { estimate: f64, tolerance: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// True for failures of the numerics (poles, divergence) as opposed to
    /// misuse of the API.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Divergent { .. }
                | Error::Blowup { .. }
                | Error::QuadratureUnresolved { .. }
                | Error::NonHermitian { .. }
        )
    }
}
