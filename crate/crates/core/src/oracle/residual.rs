use alloc::format;
use alloc::vec::Vec;

use super::compare::TimeWindow;
use super::fd::Coefficients;
use crate::error::{Error, Result};
use crate::kernel::SpatialField;
use crate::math::sqrt;
use crate::stencil::{derivative2, second_derivative2};

/// Pointwise residual `R = u_t - D u_xx + b u - r u^2` of a sampled surface.
#[derive(Debug, Clone)]
pub struct Residual {
    pub field: SpatialField,
    /// Largest `|R|` over interior points.
    pub interior_max: f64,
    /// `sqrt(sum R^2 dx dt)` over interior points.
    pub interior_l2: f64,
}

impl Residual {
    /// Interior norms restricted to times inside `window`.
    pub fn norms_in_window(&self, window: TimeWindow) -> (f64, f64) {
        interior_norms(&self.field, Some(window))
    }
}

fn interior_norms(r: &SpatialField, window: Option<TimeWindow>) -> (f64, f64) {
    let g = r.grid();
    let (nx, nt) = (g.nx(), g.nt());
    let mut max = 0.0_f64;
    let mut sum = 0.0;
    for (it, t) in g.t().points().enumerate().take(nt - 1).skip(1) {
        if let Some(w) = window {
            if !w.contains(t) {
                continue;
            }
        }
        for &v in &r.slice(it)[1..nx - 1] {
            max = max.max(v.abs());
            sum += v * v;
        }
    }
    (max, sqrt(sum * g.dx() * g.dt()))
}

/// Second-order central differences in `x` and `t`, one-sided on the edges.
pub fn pde_residual(field: &SpatialField, coeffs: &Coefficients) -> Result<Residual> {
    let g = *field.grid();
    let (nx, nt) = (g.nx(), g.nt());
    if nt < 3 || nx < 5 {
        return Err(Error::contract(format!("residual needs nt >= 3 and nx >= 5, got nt = {nt}, nx = {nx}")));
    }
    let mut out = SpatialField::zeros(g);
    for it in 0..nt {
        let uxx = second_derivative2(field.slice(it), g.dx());
        let row = out.slice_mut(it);
        for (ix, v) in row.iter_mut().enumerate() {
            let u = field.get(ix, it);
            *v = -coeffs.d() * uxx[ix] + coeffs.b() * u - coeffs.r() * u * u;
        }
    }
    for ix in 0..nx {
        let ut: Vec<f64> = derivative2(&field.column(ix), g.dt());
        for (it, d) in ut.into_iter().enumerate() {
            let v = out.get(ix, it) + d;
            out.set(ix, it, v);
        }
    }
    let (interior_max, interior_l2) = interior_norms(&out, None);
    Ok(Residual { field: out, interior_max, interior_l2 })
}
