use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernel::{ModelParams, SpaceTimeGrid, SpatialField};
use crate::math::{exp, sqrt, PI};

/// Magnitude at which the explicit march is declared divergent.
pub const BLOWUP: f64 = 1e6;
pub const MAX_STABILITY_FACTOR: f64 = 0.25;

/// Coefficients of `u_t = D u_xx - b u + r u^2` as the solver accepts them.
///
/// Unlike [`ModelParams`] this allows `D = 0` and `b = 0`, which reduce the
/// equation to pointwise ODEs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    d: f64,
    b: f64,
    r: f64,
}

impl Coefficients {
    pub fn new(d: f64, b: f64, r: f64) -> Result<Self> {
        if !(d >= 0.0 && d.is_finite()) {
            return Err(Error::param("D", format!("must be finite and >= 0, got {d}")));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::param("b", format!("must be finite and >= 0, got {b}")));
        }
        if !r.is_finite() {
            return Err(Error::param("r", format!("must be finite, got {r}")));
        }
        Ok(Self { d, b, r })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

impl From<ModelParams> for Coefficients {
    fn from(p: ModelParams) -> Self {
        Self { d: p.d(), b: p.b(), r: p.r() }
    }
}

impl From<&ModelParams> for Coefficients {
    fn from(p: &ModelParams) -> Self {
        (*p).into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    grid: SpaceTimeGrid,
    ic_sigma: f64,
    stability_factor: f64,
    max_step: Option<f64>,
}

impl SolverConfig {
    pub fn new(grid: SpaceTimeGrid, ic_sigma: f64, stability_factor: f64) -> Result<Self> {
        check_sigma(&grid, ic_sigma)?;
        if !(stability_factor > 0.0 && stability_factor <= MAX_STABILITY_FACTOR) {
            return Err(Error::param(
                "stability_factor",
                format!("must lie in (0, {MAX_STABILITY_FACTOR}], got {stability_factor}"),
            ));
        }
        Ok(Self { grid, ic_sigma, stability_factor, max_step: None })
    }

    /// Caps the internal time step, e.g. when `D = 0` leaves it otherwise
    /// unconstrained.
    pub fn with_max_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::param("max_step", format!("must be positive, got {step}")));
        }
        self.max_step = Some(step);
        Ok(self)
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    pub fn ic_sigma(&self) -> f64 {
        self.ic_sigma
    }

    pub fn stability_factor(&self) -> f64 {
        self.stability_factor
    }

    /// Number of explicit steps per output interval and their size.
    pub fn substeps(&self, d: f64) -> (usize, f64) {
        let out = self.grid.dt();
        let mut limit = self.max_step.unwrap_or(f64::INFINITY);
        if d > 0.0 {
            limit = limit.min(self.stability_factor * self.grid.dx() * self.grid.dx() / d);
        }
        let m = if out <= limit {
            1
        } else {
            let m = (out / limit) as usize;
            if out / m as f64 > limit {
                m + 1
            } else {
                m
            }
        };
        (m, out / m as f64)
    }
}

fn check_sigma(grid: &SpaceTimeGrid, sigma: f64) -> Result<()> {
    let min = 2.0 * grid.dx();
    // a relative slack so that sigma = 2 dx computed elsewhere is accepted
    if !(sigma >= min * (1.0 - 1e-12)) {
        return Err(Error::contract(format!("initial width {sigma} is below 2 dx = {min}")));
    }
    Ok(())
}

/// Unit-mass Gaussian `exp(-x^2/2 sigma^2) / (sigma sqrt(2 pi))` on the grid.
pub fn gaussian_ic(grid: &SpaceTimeGrid, sigma: f64) -> Result<Vec<f64>> {
    check_sigma(grid, sigma)?;
    let norm = 1.0 / (sigma * sqrt(2.0 * PI));
    Ok(grid.x().points().map(|x| norm * exp(-x * x / (2.0 * sigma * sigma))).collect())
}

/// Free-space linear solution from the Gaussian initial profile:
/// `exp(-b t) N(x; sigma^2 + 2 D t)`.
pub fn exact_linear_gaussian(coeffs: &Coefficients, sigma: f64, x: f64, t: f64) -> f64 {
    let var = sigma * sigma + 2.0 * coeffs.d() * t;
    exp(-coeffs.b() * t - x * x / (2.0 * var)) / sqrt(2.0 * PI * var)
}

#[derive(Debug, Clone)]
pub struct FdSolution {
    pub field: SpatialField,
    /// Explicit steps taken.
    pub steps: usize,
    pub step_size: f64,
    /// Smallest value seen at any step.
    pub min_value: f64,
}

/// Forward Euler in time, central differences in space, `u = 0` at `x_min`
/// and at the periodic image `x_max` just past the last sample.
pub fn solve_fd(coeffs: &Coefficients, config: &SolverConfig) -> Result<FdSolution> {
    let grid = *config.grid();
    let nx = grid.nx();
    let (m, k) = config.substeps(coeffs.d());
    let lambda = coeffs.d() * k / (grid.dx() * grid.dx());
    let (b, r) = (coeffs.b(), coeffs.r());

    let mut u = gaussian_ic(&grid, config.ic_sigma())?;
    u[0] = 0.0;
    let mut next = vec![0.0; nx];
    let mut field = SpatialField::zeros(grid);
    field.slice_mut(0).copy_from_slice(&u);
    let mut min_value = u.iter().copied().fold(f64::INFINITY, f64::min);
    let mut steps = 0;
    for it in 1..grid.nt() {
        for _ in 0..m {
            for j in 1..nx {
                let left = u[j - 1];
                let right = if j + 1 < nx { u[j + 1] } else { 0.0 };
                let c = u[j];
                next[j] = c + lambda * (left - 2.0 * c + right) + k * (-b * c + r * c * c);
            }
            next[0] = 0.0;
            steps += 1;
            let mut peak = 0.0_f64;
            for &v in &next {
                peak = peak.max(v.abs());
                min_value = min_value.min(v);
            }
            if !(peak <= BLOWUP) {
                return Err(Error::Blowup { step: steps, magnitude: peak });
            }
            core::mem::swap(&mut u, &mut next);
        }
        field.slice_mut(it).copy_from_slice(&u);
    }
    Ok(FdSolution { field, steps, step_size: k, min_value })
}
