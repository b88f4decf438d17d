use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::{cos, is_power_of_two, sin, TWO_PI};

/// Iterative radix-2 Cooley-Tukey transform of a fixed power-of-two length.
///
/// Twiddles are evaluated directly with `sin`/`cos` rather than by recurrence.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    twiddles: Vec<Complex64>,
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        assert!(is_power_of_two(len), "FFT length must be a power of two, got {len}");
        let twiddles = (0..len / 2)
            .map(|k| {
                let theta = -TWO_PI * k as f64 / len as f64;
                Complex64::new(cos(theta), sin(theta))
            })
            .collect();
        Self { len, twiddles }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `X_k = sum_j x_j exp(-2 pi i jk/n)`, unnormalized.
    pub fn forward(&self, buf: &mut [Complex64]) {
        self.run(buf, false);
    }

    /// `x_j = sum_k X_k exp(+2 pi i jk/n)`, unnormalized.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.run(buf, true);
    }

    fn run(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.len;
        assert_eq!(buf.len(), n, "buffer length does not match plan");
        if n < 2 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                buf.swap(i, j);
            }
        }
        let mut span = 2;
        while span <= n {
            let half = span / 2;
            let stride = n / span;
            for block in (0..n).step_by(span) {
                for j in 0..half {
                    let w = self.twiddles[j * stride];
                    let w = if inverse { w.conj() } else { w };
                    let u = buf[block + j];
                    let v = buf[block + j + half] * w;
                    buf[block + j] = u + v;
                    buf[block + j + half] = u - v;
                }
            }
            span *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (j, v)| {
                    let th = sign * TWO_PI * (j * k % n) as f64 / n as f64;
                    acc + v * Complex64::new(cos(th), sin(th))
                })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for &n in &[2usize, 8, 64, 256] {
            let x: Vec<Complex64> =
                (0..n).map(|j| Complex64::new(sin(0.37 * j as f64) + 0.1 * j as f64, cos(1.3 * j as f64))).collect();
            let plan = FftPlan::new(n);
            let mut fwd = x.clone();
            plan.forward(&mut fwd);
            let mut inv = x.clone();
            plan.inverse(&mut inv);
            let want_f = naive_dft(&x, -1.0);
            let want_i = naive_dft(&x, 1.0);
            for k in 0..n {
                assert!((fwd[k] - want_f[k]).norm() < 1e-10 * n as f64, "n={n} k={k}");
                assert!((inv[k] - want_i[k]).norm() < 1e-10 * n as f64);
            }
        }
    }

    #[test]
    fn impulse_is_flat() {
        let plan = FftPlan::new(16);
        let mut buf = vec![Complex64::new(0.0, 0.0); 16];
        buf[0] = Complex64::new(1.0, 0.0);
        plan.forward(&mut buf);
        assert!(buf.iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }
}
