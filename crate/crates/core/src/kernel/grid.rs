use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{is_power_of_two, round};

/// Uniform one-dimensional sample axis `start + i * step`, `i < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    start: f64,
    step: f64,
    len: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(start.is_finite() && step.is_finite() && step > 0.0) {
            return Err(Error::contract(format!(
                "axis needs finite start and positive step, got start={start}, step={step}"
            )));
        }
        if len < 2 {
            return Err(Error::contract(format!("axis needs at least 2 samples, got {len}")));
        }
        Ok(Self { start, step, len })
    }

    /// Periodic sampling of `[min, max)`: `len` samples, `max` excluded (it is
    /// the periodic image of `min`).
    pub fn periodic(min: f64, max: f64, len: usize) -> Result<Self> {
        if !(max > min) {
            return Err(Error::contract(format!("empty interval ({min}, {max})")));
        }
        Self::new(min, (max - min) / len as f64, len)
    }

    /// Closed sampling of `[min, max]` with both end points.
    pub fn closed(min: f64, max: f64, len: usize) -> Result<Self> {
        if !(max > min) {
            return Err(Error::contract(format!("empty interval [{min}, {max}]")));
        }
        if len < 2 {
            return Err(Error::contract("closed axis needs at least 2 samples"));
        }
        Self::new(min, (max - min) / (len - 1) as f64, len)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Last sample.
    pub fn last(&self) -> f64 {
        self.point(self.len - 1)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }

    /// Index of the sample equal to `x` (to within `1e-9` steps).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let pos = (x - self.start) / self.step;
        let idx = round(pos);
        if (pos - idx).abs() > 1e-9 || idx < 0.0 || idx >= self.len as f64 {
            return None;
        }
        Some(idx as usize)
    }

    /// Index of the sample closest to `x`, clamped to the axis.
    pub fn nearest_index(&self, x: f64) -> usize {
        let pos = round((x - self.start) / self.step);
        if pos <= 0.0 {
            0
        } else if pos >= (self.len - 1) as f64 {
            self.len - 1
        } else {
            pos as usize
        }
    }

    /// Index of the sample at `x = 0`, if the axis contains the origin.
    pub fn origin_index(&self) -> Option<usize> {
        self.index_of(0.0)
    }

    /// Spacing of the discrete frequency grid, `1 / (len * step)`.
    pub fn frequency_step(&self) -> f64 {
        1.0 / (self.len as f64 * self.step)
    }

    /// Frequency `s_k` in cycles per unit length for transform bin `k`, in
    /// standard FFT order: `0, 1, ..., len/2 - 1, -len/2, ..., -1` times the
    /// frequency step.
    pub fn frequency(&self, k: usize) -> f64 {
        let n = self.len as i64;
        let k = k as i64;
        let signed = if k < n / 2 { k } else { k - n };
        signed as f64 * self.frequency_step()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.len).map(|k| self.frequency(k)).collect()
    }
}

/// Uniform space-time grid.
///
/// Space is sampled periodically on `[x_min, x_max)` with `nx` a power of two
/// (the point `x_max` is the periodic image of `x_min`), so the frequency grid
/// has spacing `1 / (nx dx)`. Time is sampled on the closed interval
/// `[t_min, t_max]` with `nt` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeGrid {
    x: Axis,
    t: Axis,
}

impl SpaceTimeGrid {
    pub fn new(x_min: f64, x_max: f64, nx: usize, t_min: f64, t_max: f64, nt: usize) -> Result<Self> {
        if nx < 8 || !is_power_of_two(nx) {
            return Err(Error::param("nx", format!("must be a power of two >= 8, got {nx}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::param("x_max", format!("need x_min < x_max, got ({x_min}, {x_max})")));
        }
        if !(t_min.is_finite() && t_min >= 0.0) {
            return Err(Error::param("t_min", format!("must be >= 0, got {t_min}")));
        }
        if !(t_max.is_finite() && t_max > t_min) {
            return Err(Error::param("t_max", format!("must exceed t_min = {t_min}, got {t_max}")));
        }
        if nt < 2 {
            return Err(Error::param("nt", format!("need at least 2 time samples, got {nt}")));
        }
        Ok(Self { x: Axis::periodic(x_min, x_max, nx)?, t: Axis::closed(t_min, t_max, nt)? })
    }

    pub fn x(&self) -> &Axis {
        &self.x
    }

    pub fn t(&self) -> &Axis {
        &self.t
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn nt(&self) -> usize {
        self.t.len()
    }

    pub fn dx(&self) -> f64 {
        self.x.step()
    }

    pub fn dt(&self) -> f64 {
        self.t.step()
    }

    pub fn x_min(&self) -> f64 {
        self.x.start()
    }

    /// Right end of the periodic cell (not itself a sample).
    pub fn x_max(&self) -> f64 {
        self.x.start() + self.nx() as f64 * self.dx()
    }

    pub fn t_min(&self) -> f64 {
        self.t.start()
    }

    pub fn t_max(&self) -> f64 {
        self.t.last()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.x.frequencies()
    }

    /// Same spatial axis, different time sampling.
    pub fn with_time(&self, t_max: f64, nt: usize) -> Result<Self> {
        Self::new(self.x_min(), self.x_max(), self.nx(), self.t_min(), t_max, nt)
    }
}
