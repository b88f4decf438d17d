use alloc::vec::Vec;

use num_complex::Complex64;

use super::closed_form::first_order_spatial;
use super::spectral::{first_order_spectral, zeroth_spectral};
use crate::error::{Error, Result};
use crate::kernel::{discrete_delta, Axis, ModelParams, SpaceTimeGrid, SpatialField};
use crate::math::sqrt;
use crate::spectral::Transform;

/// `exp(-36)` is below double-precision resolution relative to the peak.
const TAIL_LOGS: f64 = 36.0;
/// Largest spectral padding factor used for surface synthesis.
pub const MAX_PADDING: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceMethod {
    RationalSpectral,
    FirstOrderSpectral,
    ClosedFormSpatial,
}

impl SurfaceMethod {
    pub const ALL: [SurfaceMethod; 3] =
        [SurfaceMethod::RationalSpectral, SurfaceMethod::FirstOrderSpectral, SurfaceMethod::ClosedFormSpatial];

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceMethod::RationalSpectral => "rational_spectral",
            SurfaceMethod::FirstOrderSpectral => "first_order_spectral",
            SurfaceMethod::ClosedFormSpatial => "closed_form_spatial",
        }
    }

    pub fn parse(name: &str) -> Option<SurfaceMethod> {
        SurfaceMethod::ALL.into_iter().find(|m| m.name() == name)
    }

    fn spectrum(&self, params: &ModelParams, s: f64, t: f64) -> Result<f64> {
        match self {
            SurfaceMethod::RationalSpectral => zeroth_spectral(params, s, t),
            SurfaceMethod::FirstOrderSpectral => Ok(first_order_spectral(params, s, t)),
            SurfaceMethod::ClosedFormSpatial => Err(Error::contract("closed form has no spectral side")),
        }
    }
}

/// Width beyond which the spatial profile of `method` is negligible on the
/// whole time range.
fn support_width(params: &ModelParams, grid: &SpaceTimeGrid, method: SurfaceMethod) -> f64 {
    let heat = |t: f64| sqrt(4.0 * params.d() * t * TAIL_LOGS);
    match method {
        SurfaceMethod::ClosedFormSpatial => 0.0,
        // exp(-2 alpha t) spreads like a heat kernel at time 2t
        SurfaceMethod::FirstOrderSpectral => heat(2.0 * grid.t_max()),
        // F - 1 carries 1/(alpha - 2|r|)-type poles: exponential tails with
        // rate sqrt((b - 2|r|)/D)
        SurfaceMethod::RationalSpectral => {
            let gap = params.b() - 2.0 * params.r().abs();
            if params.r() == 0.0 {
                heat(grid.t_max())
            } else if gap > 0.0 {
                heat(grid.t_max()) + TAIL_LOGS / sqrt(gap / params.d())
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Power-of-two factor by which the spectral grid is widened (same `dx`) so
/// that periodic images of the profile do not reach the cropped window.
pub fn padding_factor(params: &ModelParams, grid: &SpaceTimeGrid, method: SurfaceMethod) -> usize {
    let reach = grid.x_min().abs().max(grid.x_max().abs());
    let period = grid.nx() as f64 * grid.dx();
    let need = support_width(params, grid, method) + reach;
    let mut pad = 1;
    while pad < MAX_PADDING && (pad as f64) * period < need {
        pad *= 2;
    }
    pad
}

/// Full `(x, t)` surface with automatically chosen padding.
pub fn synthesize_surface(params: &ModelParams, grid: &SpaceTimeGrid, method: SurfaceMethod) -> Result<SpatialField> {
    synthesize_surface_padded(params, grid, method, padding_factor(params, grid, method))
}

/// Full `(x, t)` surface. Spectral methods invert each `t > 0` slice on a grid
/// `pad` times wider than `grid` and crop; the closed form is evaluated
/// pointwise. A `t = 0` slice is the discrete delta.
pub fn synthesize_surface_padded(
    params: &ModelParams,
    grid: &SpaceTimeGrid,
    method: SurfaceMethod,
    pad: usize,
) -> Result<SpatialField> {
    if pad == 0 || !pad.is_power_of_two() {
        return Err(Error::contract("padding factor must be a power of two"));
    }
    let mut field = SpatialField::zeros(*grid);
    let nx = grid.nx();
    let times: Vec<f64> = grid.t().points().collect();
    match method {
        SurfaceMethod::ClosedFormSpatial => {
            for (it, &t) in times.iter().enumerate() {
                if t > 0.0 {
                    for (ix, x) in grid.x().points().enumerate() {
                        field.set(ix, it, first_order_spatial(params, x, t)?);
                    }
                }
            }
        }
        _ => {
            let offset = (pad - 1) * nx / 2;
            let wide = Axis::new(grid.x_min() - offset as f64 * grid.dx(), grid.dx(), nx * pad)?;
            let transform = Transform::new(wide)?;
            let freqs = wide.frequencies();
            for (it, &t) in times.iter().enumerate() {
                if t > 0.0 {
                    let spectrum = freqs
                        .iter()
                        .map(|&s| method.spectrum(params, s, t).map(|v| Complex64::new(v, 0.0)))
                        .collect::<Result<Vec<_>>>()?;
                    let u = transform.inverse(&spectrum)?;
                    field.slice_mut(it).copy_from_slice(&u[offset..offset + nx]);
                }
            }
        }
    }
    if grid.t_min() == 0.0 {
        if method == SurfaceMethod::RationalSpectral {
            // surface the pole check for the unit slice as well
            for &s in &grid.frequencies() {
                zeroth_spectral(params, s, 0.0)?;
            }
        }
        field.slice_mut(0).copy_from_slice(&discrete_delta(grid.x()));
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::green_surface;

    fn fig1_grid(nt: usize) -> SpaceTimeGrid {
        SpaceTimeGrid::new(-3.0, 3.0, 1024, 0.0, 2.0, nt).unwrap()
    }

    #[test]
    fn padding_covers_support() {
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let g = fig1_grid(9);
        assert_eq!(padding_factor(&p, &g, SurfaceMethod::FirstOrderSpectral), 8);
        assert_eq!(padding_factor(&p, &g, SurfaceMethod::RationalSpectral), 16);
        assert_eq!(padding_factor(&p, &g, SurfaceMethod::ClosedFormSpatial), 1);
        let near_pole = ModelParams::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(padding_factor(&near_pole, &g, SurfaceMethod::RationalSpectral), MAX_PADDING);
    }

    #[test]
    fn linear_reduction_all_methods() {
        let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        let g = fig1_grid(9);
        let lin = green_surface(&p, &g);
        for m in SurfaceMethod::ALL {
            let u = synthesize_surface(&p, &g, m).unwrap();
            let err = u.values().iter().zip(lin.values()).fold(0.0_f64, |e, (a, b)| e.max((a - b).abs()));
            assert!(err < 1e-6, "{m:?}: {err:e}");
        }
    }

    #[test]
    fn unit_slice_is_delta() {
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let g = fig1_grid(5);
        let u = synthesize_surface(&p, &g, SurfaceMethod::FirstOrderSpectral).unwrap();
        assert_eq!(u.get(512, 0), 1.0 / g.dx());
        assert_eq!(u.slice(0).iter().filter(|v| **v != 0.0).count(), 1);
    }

    #[test]
    fn rational_pole_propagates() {
        let p = ModelParams::new(1.0, 1.0, 1.0).unwrap();
        let g = SpaceTimeGrid::new(-3.0, 3.0, 64, 0.0, 1.0, 3).unwrap();
        assert!(matches!(synthesize_surface(&p, &g, SurfaceMethod::RationalSpectral), Err(Error::Pole { .. })));
    }

    #[test]
    fn method_names() {
        for m in SurfaceMethod::ALL {
            assert_eq!(SurfaceMethod::parse(m.name()), Some(m));
        }
        assert_eq!(SurfaceMethod::parse("spline"), None);
    }
}
