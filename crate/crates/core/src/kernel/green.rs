use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::field::SpatialField;
use super::grid::{Axis, SpaceTimeGrid};
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::math::{exp, sqrt, PI};

/// Spectral symbol `(2 pi s)^2 D + b`.
pub fn alpha(params: &ModelParams, s: f64) -> f64 {
    params.alpha(s)
}

/// Decaying heat kernel `exp(-x^2 / 4Dt) / sqrt(4 pi D t) * exp(-b t)`.
///
/// Singular at `t = 0`, so `t <= 0` is a domain error.
pub fn green_spatial(params: &ModelParams, x: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Green's function needs t > 0, got t = {t}")));
    }
    let four_dt = 4.0 * params.d() * t;
    Ok(exp(-x * x / four_dt - params.b() * t) / sqrt(PI * four_dt))
}

/// `exp(-alpha(s) t)`, the transform of [`green_spatial`].
pub fn green_spectral(params: &ModelParams, s: f64, t: f64) -> f64 {
    exp(-params.alpha(s) * t)
}

/// Unit-mass discrete delta: `1/dx` at the origin sample, zero elsewhere. If
/// the axis does not contain the origin the nearest sample carries the mass.
pub fn discrete_delta(axis: &Axis) -> Vec<f64> {
    let mut v = vec![0.0; axis.len()];
    let i = axis.origin_index().unwrap_or_else(|| axis.nearest_index(0.0));
    v[i] = 1.0 / axis.step();
    v
}

/// The linear solution surface: Green's function on every `t > 0` slice and
/// the discrete delta on a `t = 0` slice.
pub fn green_surface(params: &ModelParams, grid: &SpaceTimeGrid) -> SpatialField {
    let mut field =
        SpatialField::from_fn(*grid, |x, t| if t > 0.0 { green_spatial(params, x, t).unwrap_or(0.0) } else { 0.0 });
    if grid.t_min() == 0.0 {
        field.slice_mut(0).copy_from_slice(&discrete_delta(grid.x()));
    }
    field
}
