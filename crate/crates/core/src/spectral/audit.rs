use alloc::format;
use alloc::vec::Vec;

use super::convolve::{convolve_direct, convolve_spectral};
use crate::error::{Error, Result};
use crate::kernel::{Axis, SpatialField};
use crate::stencil::{derivative4, roughness};
use crate::verdict::{AuditVerdict, Counterexample};

/// Time slices with a larger [`roughness`] than this are treated as
/// non-smooth, and the derivative audits do not apply to them.
pub const ROUGHNESS_LIMIT: f64 = 0.25;

/// Compares the direct convolution against the transform-domain product
/// route at every grid point.
pub fn audit_convolution_theorem(axis: &Axis, f: &[f64], g: &[f64], tolerance: f64) -> Result<AuditVerdict> {
    let direct = convolve_direct(axis, f, g)?;
    let spectral = convolve_spectral(axis, f, g)?;
    let (worst_i, worst) = max_abs_diff(&direct.values, &spectral);
    let ce = Counterexample::at(&[("x", axis.point(worst_i))])
        .value("direct", direct.values[worst_i])
        .value("spectral", spectral[worst_i]);
    let v = AuditVerdict::measure("convolution_theorem", worst, tolerance, ce);
    Ok(if direct.decayed {
        v
    } else {
        v.with_note("inputs do not decay at the grid edges; truncated and periodic convolutions differ")
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> (usize, f64) {
    a.iter().zip(b).enumerate().fold((0, 0.0), |(wi, w), (i, (u, v))| {
        let d = (u - v).abs();
        if d > w {
            (i, d)
        } else {
            (wi, w)
        }
    })
}

/// Audits the two derivative-of-convolution identities on the families `f`
/// and `g` (same grid, convolution along `x` at each time):
///
/// 1. `d/dx (f*g) = f_x * g = f * g_x`
/// 2. `d/dt (f*g) = f_t * g + f * g_t`
///
/// Derivatives use fourth-order differences. If any time slice of either
/// family is not smooth (see [`ROUGHNESS_LIMIT`]) both verdicts are
/// `not_applicable`.
pub fn audit_derivative_theorems(
    f: &SpatialField,
    g: &SpatialField,
    tolerance: f64,
) -> Result<(AuditVerdict, AuditVerdict)> {
    let grid = *f.grid();
    if grid != *g.grid() {
        return Err(Error::contract("derivative audit families live on different grids"));
    }
    let (nx, nt) = (grid.nx(), grid.nt());
    if nt < 5 {
        return Err(Error::contract(format!("derivative audit needs nt >= 5, got {nt}")));
    }
    let rough = (0..nt).map(|it| roughness(f.slice(it)).max(roughness(g.slice(it)))).fold(0.0_f64, f64::max);
    if rough > ROUGHNESS_LIMIT {
        let why = format!("families are not smooth (roughness {rough:.3} > {ROUGHNESS_LIMIT})");
        return Ok((
            AuditVerdict::not_applicable("derivative_theorem_x", why.clone()),
            AuditVerdict::not_applicable("derivative_theorem_t", why),
        ));
    }

    let axis = grid.x();
    let (dx, dt) = (grid.dx(), grid.dt());
    let conv = |a: &[f64], b: &[f64]| convolve_direct(axis, a, b).map(|c| c.values);

    // Theorem 1, slice by slice.
    let mut convs: Vec<Vec<f64>> = Vec::with_capacity(nt);
    let mut worst_x = (0.0_f64, Counterexample::default());
    for it in 0..nt {
        let (fs, gs) = (f.slice(it), g.slice(it));
        let c = conv(fs, gs)?;
        let dc = derivative4(&c, dx);
        let fx_g = conv(&derivative4(fs, dx), gs)?;
        let f_gx = conv(fs, &derivative4(gs, dx))?;
        for ix in 0..nx {
            let d = (dc[ix] - fx_g[ix]).abs().max((dc[ix] - f_gx[ix]).abs()).max((fx_g[ix] - f_gx[ix]).abs());
            if d > worst_x.0 {
                worst_x = (
                    d,
                    Counterexample::at(&[("x", axis.point(ix)), ("t", grid.t().point(it))])
                        .value("d_dx_conv", dc[ix])
                        .value("fx_conv_g", fx_g[ix])
                        .value("f_conv_gx", f_gx[ix]),
                );
            }
        }
        convs.push(c);
    }

    // Theorem 2: time derivatives along each x column.
    let time_derivative = |field: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        let mut out = alloc::vec![alloc::vec![0.0; nx]; nt];
        for ix in 0..nx {
            let col: Vec<f64> = (0..nt).map(|it| field(ix, it)).collect();
            for (it, v) in derivative4(&col, dt).into_iter().enumerate() {
                out[it][ix] = v;
            }
        }
        out
    };
    let dconv_dt = time_derivative(&|ix, it| convs[it][ix]);
    let f_t = time_derivative(&|ix, it| f.get(ix, it));
    let g_t = time_derivative(&|ix, it| g.get(ix, it));
    let mut worst_t = (0.0_f64, Counterexample::default());
    for it in 0..nt {
        let a = conv(&f_t[it], g.slice(it))?;
        let b = conv(f.slice(it), &g_t[it])?;
        for ix in 0..nx {
            let rhs = a[ix] + b[ix];
            let d = (dconv_dt[it][ix] - rhs).abs();
            if d > worst_t.0 {
                worst_t = (
                    d,
                    Counterexample::at(&[("x", axis.point(ix)), ("t", grid.t().point(it))])
                        .value("d_dt_conv", dconv_dt[it][ix])
                        .value("ft_conv_g_plus_f_conv_gt", rhs),
                );
            }
        }
    }

    Ok((
        AuditVerdict::measure("derivative_theorem_x", worst_x.0, tolerance, worst_x.1),
        AuditVerdict::measure("derivative_theorem_t", worst_t.0, tolerance, worst_t.1),
    ))
}

/// Result of auditing `(f*g)(x) >= f(x) g(x)` pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundAudit {
    pub verdict: AuditVerdict,
    /// Smallest margin `(f*g)(x) - f(x) g(x)` over the grid.
    pub min_margin: f64,
    /// Every violated point as `(index, x, margin)`; empty when the claim holds.
    pub violations: Vec<(usize, f64, f64)>,
}

/// Evaluates `(f*g)(x) - f(x) g(x)` at every grid point; the claim holds when
/// no margin falls below `-tolerance`. Inputs must be nonnegative.
pub fn audit_convolution_lower_bound(axis: &Axis, f: &[f64], g: &[f64], tolerance: f64) -> Result<LowerBoundAudit> {
    if let Some(v) = f.iter().chain(g).find(|v| **v < 0.0 || v.is_nan()) {
        return Err(Error::contract(format!("lower-bound audit needs nonnegative inputs, found {v}")));
    }
    let conv = convolve_direct(axis, f, g)?;
    let mut min_margin = f64::INFINITY;
    let mut worst = 0;
    let mut violations = Vec::new();
    for i in 0..axis.len() {
        let margin = conv.values[i] - f[i] * g[i];
        if margin < min_margin {
            min_margin = margin;
            worst = i;
        }
        if margin < -tolerance {
            violations.push((i, axis.point(i), margin));
        }
    }
    let ce = Counterexample::at(&[("x", axis.point(worst))])
        .value("convolution", conv.values[worst])
        .value("product", f[worst] * g[worst]);
    let mut verdict = AuditVerdict::measure("convolution_lower_bound", (-min_margin).max(0.0), tolerance, ce);
    if !violations.is_empty() {
        verdict = verdict.with_note(format!("violated at {} of {} grid points", violations.len(), axis.len()));
    }
    Ok(LowerBoundAudit { verdict, min_margin, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{discrete_delta, green_spatial, green_spectral, ModelParams, SpaceTimeGrid};
    use crate::math::{exp, sqrt, PI};
    use crate::verdict::Status;
    use alloc::vec;

    fn gaussian(x: f64) -> f64 {
        exp(-x * x / 2.0) / sqrt(2.0 * PI)
    }

    #[test]
    fn convolution_theorem_on_gaussians_and_delta() {
        let a = Axis::periodic(-12.0, 12.0, 512).unwrap();
        let f: Vec<f64> = a.points().map(gaussian).collect();
        assert!(audit_convolution_theorem(&a, &f, &f, 1e-8).unwrap().holds());
        let d = discrete_delta(&a);
        assert!(audit_convolution_theorem(&a, &d, &f, 1e-8).unwrap().holds());
    }

    #[test]
    fn convolution_theorem_fails_on_ramps() {
        let a = Axis::periodic(-4.0, 4.0, 64).unwrap();
        let ramp: Vec<f64> = a.points().map(|x| x + 4.0).collect();
        let v = audit_convolution_theorem(&a, &ramp, &ramp, 1e-8).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(v.counterexample.is_some());
        assert!(!v.note.is_empty());
    }

    fn heat_family(grid: SpaceTimeGrid) -> SpatialField {
        let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        SpatialField::from_fn(grid, |x, t| green_spatial(&p, x, t).unwrap())
    }

    #[test]
    fn derivative_theorems_hold_for_heat_kernels() {
        let grid = SpaceTimeGrid::new(-8.0, 8.0, 256, 0.5, 1.0, 33).unwrap();
        let f = heat_family(grid);
        let (tx, tt) = audit_derivative_theorems(&f, &f, 1e-5).unwrap();
        assert!(tx.holds(), "{tx:?}");
        assert!(tt.holds(), "{tt:?}");
    }

    #[test]
    fn time_constant_factor_reduces_theorem_two() {
        let grid = SpaceTimeGrid::new(-8.0, 8.0, 256, 0.5, 1.0, 17).unwrap();
        let f = SpatialField::from_fn(grid, |x, _| gaussian(x));
        let g = heat_family(grid);
        let (tx, tt) = audit_derivative_theorems(&f, &g, 1e-5).unwrap();
        assert!(tx.holds() && tt.holds());
    }

    #[test]
    fn deltas_are_not_applicable() {
        let grid = SpaceTimeGrid::new(-4.0, 4.0, 64, 0.0, 1.0, 9).unwrap();
        let mut f = SpatialField::zeros(grid);
        let d = discrete_delta(grid.x());
        for it in 0..9 {
            f.slice_mut(it).copy_from_slice(&d);
        }
        let (tx, tt) = audit_derivative_theorems(&f, &f, 1e-5).unwrap();
        assert_eq!(tx.status, Status::NotApplicable);
        assert_eq!(tt.status, Status::NotApplicable);
    }

    #[test]
    fn lower_bound_for_deltas_depends_on_spacing() {
        // (d*d)(0) = 1/dx against d(0)^2 = 1/dx^2: holds only for dx >= 1.
        for (n, holds) in [(16usize, false), (4, true)] {
            let a = Axis::periodic(-4.0, 4.0, n).unwrap(); // dx = 0.5, 2
            let d = discrete_delta(&a);
            let audit = audit_convolution_lower_bound(&a, &d, &d, 1e-12).unwrap();
            assert_eq!(audit.verdict.holds(), holds, "dx = {}", a.step());
            let o = a.origin_index().unwrap();
            let want = 1.0 / a.step() - 1.0 / (a.step() * a.step());
            assert!((audit.min_margin - want.min(0.0)).abs() < 1e-12);
            if !holds {
                assert_eq!(audit.violations, vec![(o, 0.0, want)]);
            }
        }
    }

    #[test]
    fn lower_bound_for_rectangles() {
        let a = Axis::periodic(-2.0, 2.0, 64).unwrap();
        let rect: Vec<f64> = a.points().map(|x| if (0.0..=1.0).contains(&x) { 1.0 } else { 0.0 }).collect();
        let audit = audit_convolution_lower_bound(&a, &rect, &rect, 1e-12).unwrap();
        assert_eq!(audit.verdict.status, Status::Fails);
        // Riemann peak at x = 1 is (1/dx + 1) dx = 1 + dx >= 1: equality up to one cell.
        let i1 = a.index_of(1.0).unwrap();
        let c = convolve_direct(&a, &rect, &rect).unwrap();
        assert!((c.values[i1] - (1.0 + a.step())).abs() < 1e-12);
        assert!(audit.violations.iter().all(|&(i, _, _)| i != i1));
        // worst at x = 0: conv = dx, product = 1
        let ce = audit.verdict.counterexample.unwrap();
        assert_eq!(ce.coordinates, vec![("x", 0.0)]);
        assert!((audit.min_margin - (a.step() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn lower_bound_for_spectral_kernel_profiles() {
        // f = g = exp(-alpha(s)) on the s axis: (f*g)(0) = e^{-2}/sqrt(8 pi) < e^{-2}.
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let a = Axis::periodic(-4.0, 4.0, 512).unwrap();
        let f: Vec<f64> = a.points().map(|s| green_spectral(&p, s, 1.0)).collect();
        let audit = audit_convolution_lower_bound(&a, &f, &f, 1e-12).unwrap();
        assert_eq!(audit.verdict.status, Status::Fails);
        let want = exp(-2.0) / sqrt(8.0 * PI) - exp(-2.0);
        assert!((audit.min_margin - want).abs() < 1e-10);
    }

    #[test]
    fn negative_inputs_rejected() {
        let a = Axis::periodic(-1.0, 1.0, 8).unwrap();
        let f = vec![0.0, 1.0, -0.1, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert!(audit_convolution_lower_bound(&a, &f, &f, 1e-12).is_err());
    }
}
