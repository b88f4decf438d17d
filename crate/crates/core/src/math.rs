//! Special functions and `libm` re-exports.
//!
//! Everything in the crate evaluates transcendental functions through this
//! module so that `std` and `no_std` builds agree bit for bit.

pub use libm::{cos, erfc, exp, expm1, fabs, floor, log, round, sin, sqrt};

pub const PI: f64 = core::f64::consts::PI;
pub const TWO_PI: f64 = 2.0 * PI;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Below this argument `exp(x^2) erfc(x)` is evaluated directly.
const ERFCX_DIRECT_LIMIT: f64 = 3.0;
const ERFCX_CF_TERMS: usize = 96;

/// Scaled complementary error function `exp(x^2) erfc(x)`.
///
/// Overflows (to `+inf`) only for very negative `x`, where the true value
/// does.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < ERFCX_DIRECT_LIMIT {
        return exp(x * x) * erfc(x);
    }
    if x > 1e8 {
        return FRAC_1_SQRT_PI / x;
    }
    // Laplace continued fraction:
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut tail = x;
    for k in (1..=ERFCX_CF_TERMS).rev() {
        tail = x + 0.5 * k as f64 / tail;
    }
    FRAC_1_SQRT_PI / tail
}

/// `exp(a) * erfc(c)` without the intermediate overflow/underflow of the
/// naive product.
pub fn exp_erfc(a: f64, c: f64) -> f64 {
    if c <= 0.0 {
        exp(a) * erfc(c)
    } else {
        exp(a - c * c) * erfcx(c)
    }
}

/// Heaviside step with the half-maximum convention `theta(0) = 1/2`.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}
