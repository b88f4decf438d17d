use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::grid::SpaceTimeGrid;

/// Real surface `u(x, t)` sampled on a [`SpaceTimeGrid`].
///
/// Storage is time-major: each time slice is a contiguous run of `nx` values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialField {
    grid: SpaceTimeGrid,
    values: Vec<f64>,
}

impl SpatialField {
    pub fn zeros(grid: SpaceTimeGrid) -> Self {
        Self { values: vec![0.0; grid.nx() * grid.nt()], grid }
    }

    pub fn from_fn(grid: SpaceTimeGrid, mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.nx() * grid.nt());
        for t in grid.t().points() {
            for x in grid.x().points() {
                values.push(f(x, t));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    /// Value at `(x index, t index)`.
    pub fn get(&self, ix: usize, it: usize) -> f64 {
        self.values[it * self.grid.nx() + ix]
    }

    pub fn set(&mut self, ix: usize, it: usize, v: f64) {
        let nx = self.grid.nx();
        self.values[it * nx + ix] = v;
    }

    pub fn slice(&self, it: usize) -> &[f64] {
        let nx = self.grid.nx();
        &self.values[it * nx..(it + 1) * nx]
    }

    pub fn slice_mut(&mut self, it: usize) -> &mut [f64] {
        let nx = self.grid.nx();
        &mut self.values[it * nx..(it + 1) * nx]
    }

    /// Values along time at fixed `x` index.
    pub fn column(&self, ix: usize) -> Vec<f64> {
        (0..self.grid.nt()).map(|it| self.get(ix, it)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Riemann mass `sum u dx` of one time slice.
    pub fn mass(&self, it: usize) -> f64 {
        self.slice(it).iter().sum::<f64>() * self.grid.dx()
    }
}

/// Complex surface `F(s, t)` sampled on the frequency grid induced by a
/// [`SpaceTimeGrid`], in FFT bin order along `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: SpaceTimeGrid,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn from_fn(grid: SpaceTimeGrid, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let s = grid.frequencies();
        let mut values = Vec::with_capacity(grid.nx() * grid.nt());
        for t in grid.t().points() {
            for &sk in &s {
                values.push(f(sk, t));
            }
        }
        Self { grid, values }
    }

    pub fn from_real(grid: SpaceTimeGrid, real: Vec<f64>) -> Self {
        assert_eq!(real.len(), grid.nx() * grid.nt(), "spectral field size mismatch");
        Self { grid, values: real.into_iter().map(|v| Complex64::new(v, 0.0)).collect() }
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    /// Value at `(s bin, t index)`.
    pub fn get(&self, ks: usize, it: usize) -> Complex64 {
        self.values[it * self.grid.nx() + ks]
    }

    pub fn slice(&self, it: usize) -> &[Complex64] {
        let nx = self.grid.nx();
        &self.values[it * nx..(it + 1) * nx]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Largest `|F(s, t) - conj F(-s, t)|` over the grid, excluding the
    /// Nyquist bin which has no partner.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let nx = self.grid.nx();
        let mut worst: f64 = 0.0;
        for it in 0..self.grid.nt() {
            let row = self.slice(it);
            worst = worst.max(row[0].im.abs());
            for k in 1..nx / 2 {
                worst = worst.max((row[k] - row[nx - k].conj()).norm());
            }
        }
        worst
    }
}
