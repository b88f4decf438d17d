use alloc::format;

use crate::error::{Error, Result};
use crate::kernel::{green_spatial, ModelParams};
use crate::math::{exp, exp_erfc, heaviside, sqrt};

/// The four spatial terms of the first-order solution, each quoted with the
/// spectral function it is claimed to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    /// `exp(-alpha t)` and the decaying heat kernel.
    Gauss,
    /// `1/alpha` and `exp(-|x| sqrt(b/D)) / (2 sqrt(bD))`.
    Resolvent,
    /// `exp(-alpha t)/alpha` and a one-sided erfc pair carrying `exp(bt)`.
    MixedSingle,
    /// `exp(-2 alpha t)/alpha` and a one-sided erfc pair in `sqrt(2bD)`.
    MixedDouble,
}

impl Term {
    pub const ALL: [Term; 4] = [Term::Gauss, Term::Resolvent, Term::MixedSingle, Term::MixedDouble];

    pub fn name(&self) -> &'static str {
        match self {
            Term::Gauss => "gauss",
            Term::Resolvent => "resolvent",
            Term::MixedSingle => "mixed_single",
            Term::MixedDouble => "mixed_double",
        }
    }

    pub fn parse(name: &str) -> Option<Term> {
        Term::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn depends_on_time(&self) -> bool {
        !matches!(self, Term::Resolvent)
    }

    /// The spectral side of the pair.
    pub fn spectral(&self, params: &ModelParams, s: f64, t: f64) -> f64 {
        let a = params.alpha(s);
        match self {
            Term::Gauss => exp(-a * t),
            Term::Resolvent => 1.0 / a,
            Term::MixedSingle => exp(-a * t) / a,
            Term::MixedDouble => exp(-2.0 * a * t) / a,
        }
    }
}

/// The spatial side of the pair, exactly as quoted (Heaviside at zero is 1/2).
pub fn closed_form_term(term: Term, params: &ModelParams, x: f64, t: f64) -> Result<f64> {
    if term.depends_on_time() && !(t > 0.0) {
        return Err(Error::Domain(format!("term `{}` needs t > 0, got t = {t}", term.name())));
    }
    let (d, b) = (params.d(), params.b());
    let sbd = sqrt(b * d);
    Ok(match term {
        Term::Gauss => green_spatial(params, x, t)?,
        Term::Resolvent => exp(-x.abs() * sqrt(b / d)) / (2.0 * sbd),
        Term::MixedSingle => {
            let w = 2.0 * sqrt(d * t);
            let left = exp_erfc(b * x / sbd + b * t, (2.0 * t * sbd + x) / w);
            let right = exp_erfc(b * t - b * x / sbd, (2.0 * t * sbd - x) / w);
            (left * heaviside(-x) + right * heaviside(x)) / (4.0 * sbd)
        }
        Term::MixedDouble => {
            let s2 = sqrt(2.0 * b * d);
            let w = 2.0 * sqrt(2.0 * d * t);
            let left = exp_erfc(b * x / s2 - b * t, (2.0 * t * s2 + x) / w);
            let right = exp_erfc(-b * t - b * x / s2, (2.0 * t * s2 - x) / w);
            (left * heaviside(-x) + right * heaviside(x)) / (4.0 * s2)
        }
    })
}

/// Inverse transform of `exp(-alpha tau)/alpha` for `tau >= 0`:
///
/// ```text
/// [exp(-k|x|) erfc(sqrt(b tau) - |x|/(2 sqrt(D tau)))
///  + exp(k|x|) erfc(sqrt(b tau) + |x|/(2 sqrt(D tau)))] / (4 sqrt(bD)),   k = sqrt(b/D)
/// ```
///
/// which is `integral_tau^inf G(x, t') dt'` for the decaying heat kernel `G`.
pub fn decaying_resolvent(params: &ModelParams, x: f64, tau: f64) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("decaying resolvent needs tau >= 0, got {tau}")));
    }
    let (d, b) = (params.d(), params.b());
    let k = sqrt(b / d);
    let ax = x.abs();
    let sbd = sqrt(b * d);
    if tau == 0.0 {
        return Ok(exp(-k * ax) / (2.0 * sbd));
    }
    let w = 2.0 * sqrt(d * tau);
    let rb = sqrt(b * tau);
    Ok((exp_erfc(-k * ax, rb - ax / w) + exp_erfc(k * ax, rb + ax / w)) / (4.0 * sbd))
}

/// First-order spatial solution assembled from the quoted terms:
/// `gauss - r mixed_single + r mixed_double`.
pub fn first_order_spatial(params: &ModelParams, x: f64, t: f64) -> Result<f64> {
    let r = params.r();
    let g = closed_form_term(Term::Gauss, params, x, t)?;
    if r == 0.0 {
        return Ok(g);
    }
    Ok(g - r * closed_form_term(Term::MixedSingle, params, x, t)?
        + r * closed_form_term(Term::MixedDouble, params, x, t)?)
}
