use crate::error::{Error, Result};
use crate::kernel::ModelParams;
use crate::math::{exp, expm1};

/// Smallest denominator magnitude the rational form accepts.
pub const POLE_GUARD: f64 = 1e-9;

/// `integral_0^t exp(-alpha(s) t') dt' = (1 - exp(-alpha t)) / alpha`.
pub fn cumulative_kernel_integral(params: &ModelParams, s: f64, t: f64) -> f64 {
    let a = params.alpha(s);
    -expm1(-a * t) / a
}

/// `C(s) = 1 - r / alpha(s)`.
pub fn integration_constant(params: &ModelParams, s: f64) -> f64 {
    1.0 - params.r() / params.alpha(s)
}

/// `C(s) - r K(s, t)`.
pub fn rational_denominator(params: &ModelParams, s: f64, t: f64) -> f64 {
    integration_constant(params, s) - params.r() * cumulative_kernel_integral(params, s, t)
}

fn checked_denominator(params: &ModelParams, s: f64, t: f64) -> Result<f64> {
    let den = rational_denominator(params, s, t);
    if !(den.abs() >= POLE_GUARD) {
        return Err(Error::Pole { iteration: None, s, t, magnitude: den.abs() });
    }
    Ok(den)
}

/// Nonlinear factor `F = 1 / (C - r K)`.
pub fn zeroth_factor(params: &ModelParams, s: f64, t: f64) -> Result<f64> {
    Ok(1.0 / checked_denominator(params, s, t)?)
}

/// `dF/dt = r exp(-alpha t) F^2`, differentiated in closed form.
pub fn zeroth_factor_rate(params: &ModelParams, s: f64, t: f64) -> Result<f64> {
    let f = zeroth_factor(params, s, t)?;
    Ok(params.r() * exp(-params.alpha(s) * t) * f * f)
}

/// The rational zeroth approximation `g / (C - r K)`.
pub fn zeroth_spectral(params: &ModelParams, s: f64, t: f64) -> Result<f64> {
    let den = checked_denominator(params, s, t)?;
    Ok(exp(-params.alpha(s) * t) / den)
}

/// Lumped expansion variable with `F = 1 / (1 - r zeta)`:
/// `zeta = 1/alpha + K`.
pub fn zeta(params: &ModelParams, s: f64, t: f64) -> f64 {
    1.0 / params.alpha(s) + cumulative_kernel_integral(params, s, t)
}

/// `g * sum_{n <= order} (r zeta)^n`.
pub fn binomial_series_spectral(params: &ModelParams, s: f64, t: f64, order: usize) -> Result<f64> {
    let q = params.r() * zeta(params, s, t);
    if !(q.abs() < 1.0) {
        return Err(Error::Divergent { s, t, ratio: q.abs() });
    }
    let mut sum = 1.0;
    for _ in 0..order {
        sum = 1.0 + q * sum;
    }
    Ok(exp(-params.alpha(s) * t) * sum)
}

/// Three-term first-order form
/// `exp(-alpha t) - r exp(-alpha t)/alpha + r exp(-2 alpha t)/alpha`,
/// arranged as `g (1 - r (1 - g)/alpha)` so that the `t = 0` value is exactly 1.
pub fn first_order_spectral(params: &ModelParams, s: f64, t: f64) -> f64 {
    let a = params.alpha(s);
    let g = exp(-a * t);
    g * (1.0 + params.r() * expm1(-a * t) / a)
}
