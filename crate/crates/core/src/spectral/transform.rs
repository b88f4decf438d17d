use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::fft::FftPlan;
use crate::error::{Error, Result};
use crate::kernel::Axis;
use crate::math::{cos, is_power_of_two, sin, TWO_PI};

/// Relative size of the imaginary part an inverse transform may leave before
/// the spectrum is declared non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Continuum-scaled transforms on one axis.
///
/// `forward` approximates `F(s) = integral f(x) exp(-2 pi i s x) dx` by a
/// Riemann sum with weight `dx`; `inverse` approximates
/// `f(x) = integral F(s) exp(2 pi i s x) ds` with weight `ds = 1/(n dx)`.
/// The pair is an exact inverse of each other on the grid.
#[derive(Debug, Clone)]
pub struct Transform {
    axis: Axis,
    plan: FftPlan,
    // exp(-2 pi i s_k x_min)
    phase: Vec<Complex64>,
}

impl Transform {
    pub fn new(axis: Axis) -> Result<Self> {
        if !is_power_of_two(axis.len()) {
            return Err(Error::contract(format!("transform length must be a power of two, got {}", axis.len())));
        }
        let phase = (0..axis.len())
            .map(|k| {
                let th = -TWO_PI * axis.frequency(k) * axis.start();
                Complex64::new(cos(th), sin(th))
            })
            .collect();
        Ok(Self { plan: FftPlan::new(axis.len()), axis, phase })
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.axis.len() {
            return Err(Error::contract(format!("sample count {len} does not match axis length {}", self.axis.len())));
        }
        Ok(())
    }

    pub fn forward(&self, values: &[f64]) -> Result<Vec<Complex64>> {
        self.check_len(values.len())?;
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.plan.forward(&mut buf);
        let dx = self.axis.step();
        for (b, p) in buf.iter_mut().zip(&self.phase) {
            *b = *b * *p * dx;
        }
        Ok(buf)
    }

    pub fn forward_complex(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(values.len())?;
        let mut buf = values.to_vec();
        self.plan.forward(&mut buf);
        let dx = self.axis.step();
        for (b, p) in buf.iter_mut().zip(&self.phase) {
            *b = *b * *p * dx;
        }
        Ok(buf)
    }

    pub fn inverse_complex(&self, spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(spectrum.len())?;
        let mut buf: Vec<Complex64> = spectrum.iter().zip(&self.phase).map(|(f, p)| f * p.conj()).collect();
        self.plan.inverse(&mut buf);
        let ds = self.axis.frequency_step();
        for b in buf.iter_mut() {
            *b *= ds;
        }
        Ok(buf)
    }

    /// Real inverse. Fails with [`Error::NonHermitian`] when the imaginary
    /// part exceeds [`HERMITIAN_TOL`] relative to the real part.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Result<Vec<f64>> {
        let z = self.inverse_complex(spectrum)?;
        let (re_max, im_max) = z.iter().fold((0.0_f64, 0.0_f64), |(r, i), v| (r.max(v.re.abs()), i.max(v.im.abs())));
        if im_max > HERMITIAN_TOL * re_max.max(1.0) {
            return Err(Error::NonHermitian { residual: im_max });
        }
        Ok(z.into_iter().map(|v| v.re).collect())
    }

    /// Samples a continuous spectrum `F(s)` on the bins of this axis, folding
    /// in the `2 folds` aliases `F(s_k + m/dx)`, `0 < |m| <= folds`.
    ///
    /// On grid points the inverse of the folded samples equals the Fourier
    /// series of the periodized function up to the spectral tail beyond
    /// `(folds + 1/2)/dx`, which makes slowly decaying spectra usable.
    pub fn sample_spectrum(&self, f: impl Fn(f64) -> Complex64, folds: usize) -> Vec<Complex64> {
        let dx = self.axis.step();
        let shift = self.axis.start() / dx;
        let alias_phase: Vec<Complex64> = (0..=folds)
            .map(|m| {
                let th = TWO_PI * m as f64 * shift;
                Complex64::new(cos(th), sin(th))
            })
            .collect();
        (0..self.axis.len())
            .map(|k| {
                let s = self.axis.frequency(k);
                let mut acc = f(s);
                for m in 1..=folds {
                    let off = m as f64 / dx;
                    acc += f(s + off) * alias_phase[m] + f(s - off) * alias_phase[m].conj();
                }
                acc
            })
            .collect()
    }
}

pub fn forward_transform(axis: &Axis, values: &[f64]) -> Result<Vec<Complex64>> {
    Transform::new(*axis)?.forward(values)
}

pub fn inverse_transform(axis: &Axis, spectrum: &[Complex64]) -> Result<Vec<f64>> {
    Transform::new(*axis)?.inverse(spectrum)
}
