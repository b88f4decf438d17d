use alloc::vec::Vec;

use num_complex::Complex64;

use super::spectral::{integration_constant, zeroth_factor, zeroth_factor_rate, zeta};
use crate::error::Result;
use crate::kernel::{ModelParams, SpaceTimeGrid, SpectralField};
use crate::math::exp;

/// The zeroth approximation `u = g F` sampled on the spectral grid.
///
/// Construction evaluates `F` everywhere, so a pole anywhere on the grid is
/// reported up front.
#[derive(Debug, Clone)]
pub struct ZerothSolution {
    params: ModelParams,
    grid: SpaceTimeGrid,
    constant: Vec<f64>,
    factor: SpectralField,
    u_spectral: SpectralField,
    zeta: SpectralField,
}

impl ZerothSolution {
    pub fn new(params: ModelParams, grid: SpaceTimeGrid) -> Result<Self> {
        let freqs = grid.frequencies();
        let constant = freqs.iter().map(|&s| integration_constant(&params, s)).collect();
        let mut f = Vec::with_capacity(grid.nx() * grid.nt());
        for t in grid.t().points() {
            for &s in &freqs {
                f.push(zeroth_factor(&params, s, t)?);
            }
        }
        let factor = SpectralField::from_real(grid, f);
        let kernel = SpectralField::from_fn(grid, |s, t| Complex64::new(exp(-params.alpha(s) * t), 0.0));
        let u_spectral = SpectralField::from_real(
            grid,
            kernel.values().iter().zip(factor.values()).map(|(g, f)| g.re * f.re).collect(),
        );
        let zeta = SpectralField::from_fn(grid, |s, t| Complex64::new(zeta(&params, s, t), 0.0));
        Ok(Self { params, grid, constant, factor, u_spectral, zeta })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    /// `C(s)` on the frequency bins, FFT order.
    pub fn constant(&self) -> &[f64] {
        &self.constant
    }

    pub fn factor(&self) -> &SpectralField {
        &self.factor
    }

    pub fn u_spectral(&self) -> &SpectralField {
        &self.u_spectral
    }

    pub fn zeta(&self) -> &SpectralField {
        &self.zeta
    }

    /// Largest `|g F_t - r g^2 F^2|` over the grid, with `F_t` differentiated
    /// in closed form. This is the equation `u = gF` solves after the
    /// self-convolution is replaced by a pointwise square.
    pub fn surrogate_residual(&self) -> Result<f64> {
        let r = self.params.r();
        let freqs = self.grid.frequencies();
        let mut worst = 0.0_f64;
        for (it, t) in self.grid.t().points().enumerate() {
            for (ks, &s) in freqs.iter().enumerate() {
                let g = exp(-self.params.alpha(s) * t);
                let f = self.factor.get(ks, it).re;
                let ft = zeroth_factor_rate(&self.params, s, t)?;
                worst = worst.max((g * ft - r * g * g * f * f).abs());
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn unit_slice_is_inverse_constant() {
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let g = SpaceTimeGrid::new(-3.0, 3.0, 64, 0.0, 2.0, 9).unwrap();
        let z = ZerothSolution::new(p, g).unwrap();
        for (k, c) in z.constant().iter().enumerate() {
            assert!((z.u_spectral().get(k, 0).re - 1.0 / c).abs() < 1e-15);
        }
        assert!(z.surrogate_residual().unwrap() <= 1e-8);
    }

    #[test]
    fn pole_rejected_at_construction() {
        let p = ModelParams::new(1.0, 1.0, 1.0).unwrap();
        let g = SpaceTimeGrid::new(-3.0, 3.0, 64, 0.0, 2.0, 9).unwrap();
        assert!(matches!(ZerothSolution::new(p, g), Err(Error::Pole { .. })));
    }
}
