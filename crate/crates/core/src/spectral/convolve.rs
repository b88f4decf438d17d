use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::transform::Transform;
use crate::error::{Error, Result};
use crate::kernel::Axis;

/// Edge magnitude below which a sampled function counts as decayed, so that
/// truncating its convolution integral to the grid is harmless.
pub const EDGE_DECAY: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Convolution {
    pub values: Vec<f64>,
    /// Both inputs decay below [`EDGE_DECAY`] at the grid edges. When false
    /// the result is the truncated integral and disagrees with the periodic
    /// (transform-domain) convolution.
    pub decayed: bool,
}

pub fn edge_magnitude(v: &[f64]) -> f64 {
    match (v.first(), v.last()) {
        (Some(a), Some(b)) => a.abs().max(b.abs()),
        _ => 0.0,
    }
}

fn check_pair(axis: &Axis, f: &[f64], g: &[f64]) -> Result<usize> {
    if f.len() != axis.len() || g.len() != axis.len() {
        return Err(Error::contract(format!(
            "convolution inputs have lengths {} and {}, axis has {}",
            f.len(),
            g.len(),
            axis.len()
        )));
    }
    axis.origin_index().ok_or_else(|| Error::contract("convolution axis must contain x = 0 as a sample"))
}

/// Riemann-sum quadrature of `(f * g)(x_i) = integral f(x_i - y) g(y) dy`,
/// treating both functions as zero off the grid.
pub fn convolve_direct(axis: &Axis, f: &[f64], g: &[f64]) -> Result<Convolution> {
    let origin = check_pair(axis, f, g)?;
    let n = axis.len();
    let dx = axis.step();
    let mut values = vec![0.0; n];
    for (i, out) in values.iter_mut().enumerate() {
        // x_i - y_j = x_{i - j + origin}
        let j_lo = (i + origin).saturating_sub(n - 1);
        let j_hi = (i + origin).min(n - 1);
        let mut acc = 0.0;
        for j in j_lo..=j_hi {
            acc += f[i + origin - j] * g[j];
        }
        *out = acc * dx;
    }
    Ok(Convolution { values, decayed: edge_magnitude(f) <= EDGE_DECAY && edge_magnitude(g) <= EDGE_DECAY })
}

/// Convolution through the transform domain: `inverse(forward(f) forward(g))`.
/// This is the periodic convolution on the grid.
pub fn convolve_spectral(axis: &Axis, f: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    check_pair(axis, f, g)?;
    let tr = Transform::new(*axis)?;
    let ff = tr.forward(f)?;
    let gg = tr.forward(g)?;
    let prod: Vec<_> = ff.iter().zip(&gg).map(|(a, b)| a * b).collect();
    tr.inverse(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::discrete_delta;
    use crate::math::{exp, sqrt, PI};

    fn gauss(var: f64) -> impl Fn(f64) -> f64 {
        move |x| exp(-x * x / (2.0 * var)) / sqrt(2.0 * PI * var)
    }

    #[test]
    fn delta_is_identity() {
        let a = Axis::periodic(-8.0, 8.0, 256).unwrap();
        let g: Vec<f64> = a.points().map(|x| exp(-(x - 1.0) * (x - 1.0))).collect();
        let c = convolve_direct(&a, &discrete_delta(&a), &g).unwrap();
        for (u, v) in c.values.iter().zip(&g) {
            assert!((u - v).abs() < 1e-15);
        }
    }

    #[test]
    fn gaussians_add_variances() {
        let a = Axis::periodic(-12.0, 12.0, 512).unwrap();
        let f: Vec<f64> = a.points().map(gauss(1.0)).collect();
        let c = convolve_direct(&a, &f, &f).unwrap();
        assert!(c.decayed);
        let worst = a.points().zip(&c.values).fold(0.0_f64, |m, (x, v)| m.max((v - gauss(2.0)(x)).abs()));
        assert!(worst < 1e-8, "worst = {worst:e}");
        let s = convolve_spectral(&a, &f, &f).unwrap();
        for (u, v) in s.iter().zip(&c.values) {
            assert!((u - v).abs() < 1e-8);
        }
    }

    #[test]
    fn commutative_to_round_off() {
        let a = Axis::periodic(-6.0, 6.0, 128).unwrap();
        let f: Vec<f64> = a.points().map(|x| exp(-x * x) * (1.0 + 0.3 * x)).collect();
        let g: Vec<f64> = a.points().map(|x| exp(-(x + 0.5) * (x + 0.5) / 0.7)).collect();
        let fg = convolve_direct(&a, &f, &g).unwrap().values;
        let gf = convolve_direct(&a, &g, &f).unwrap().values;
        for (u, v) in fg.iter().zip(&gf) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn flags_undecayed_inputs_and_bad_axes() {
        let a = Axis::periodic(-1.0, 1.0, 16).unwrap();
        let ramp: Vec<f64> = a.points().collect();
        assert!(!convolve_direct(&a, &ramp, &ramp).unwrap().decayed);
        let off = Axis::periodic(-1.05, 1.0, 16).unwrap();
        assert!(convolve_direct(&off, &ramp, &ramp).is_err());
        assert!(convolve_direct(&a, &ramp[..8], &ramp).is_err());
    }
}
