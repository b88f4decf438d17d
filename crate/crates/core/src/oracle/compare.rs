use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernel::{SpaceTimeGrid, SpatialField};
use crate::math::sqrt;

/// Closed time interval used to restrict comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow {
    pub start: f64,
    pub end: f64,
}

impl TimeWindow {
    pub fn new(start: f64, end: f64) -> Self {
        Self { start, end }
    }

    /// Excludes `t < 5 dt`, where the regularized initial data dominates.
    pub fn default_for(grid: &SpaceTimeGrid) -> Self {
        Self::new(grid.t_min() + 5.0 * grid.dt(), f64::INFINITY)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceError {
    pub t: f64,
    pub max_abs: f64,
    /// Trapezoid `sqrt(integral e^2 dx)` on the slice.
    pub l2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSummary {
    pub max_abs: f64,
    /// Trapezoid `sqrt(integral integral e^2 dx dt)` over the window.
    pub l2: f64,
    pub slices: Vec<SliceError>,
}

fn trapezoid(v: &[f64], h: f64) -> f64 {
    match v.len() {
        0 | 1 => 0.0,
        n => h * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[n - 1])),
    }
}

pub fn compare_fields(a: &SpatialField, b: &SpatialField, window: TimeWindow) -> Result<ErrorSummary> {
    if a.grid() != b.grid() {
        return Err(Error::contract(format!(
            "cannot compare fields on different grids: {:?} vs {:?}",
            a.grid(),
            b.grid()
        )));
    }
    let g = a.grid();
    let mut slices = Vec::new();
    let mut sq = Vec::new();
    for (it, t) in g.t().points().enumerate() {
        if !window.contains(t) {
            continue;
        }
        let e2: Vec<f64> = a.slice(it).iter().zip(b.slice(it)).map(|(x, y)| (x - y) * (x - y)).collect();
        let max_abs = e2.iter().fold(0.0_f64, |m, v| m.max(sqrt(*v)));
        let i = trapezoid(&e2, g.dx());
        sq.push(i);
        slices.push(SliceError { t, max_abs, l2: sqrt(i) });
    }
    let max_abs = slices.iter().fold(0.0_f64, |m, s| m.max(s.max_abs));
    Ok(ErrorSummary { max_abs, l2: sqrt(trapezoid(&sq, g.dt())), slices })
}
