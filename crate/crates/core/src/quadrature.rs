//! Cumulative time quadrature pinned to vanish at the first sample.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{exp, expm1};

/// Cumulative trapezoid rule: `out[k] = integral of v from sample 0 to k`.
pub fn cumulative_trapezoid(v: &[f64], h: f64) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for k in 1..v.len() {
        out[k] = out[k - 1] + 0.5 * h * (v[k - 1] + v[k]);
    }
    out
}

/// Weights `(left, right) / h` of the product trapezoid rule for
/// `integral_0^h exp(-rate tau) q(tau) d tau` with `q` linear between its end
/// values: `left = E0 - E1`, `right = E1` where `E0 = (1 - e^-z)/z` and
/// `E1 = (1 - (1 + z) e^-z)/z^2`, `z = rate h`.
fn exp_weights(z: f64) -> (f64, f64) {
    if z.abs() < 0.05 {
        // term = (-z)^k / (k+2)!; E0 = sum (k+2) term, E1 = sum (k+1) term
        let mut e0 = 0.0;
        let mut e1 = 0.0;
        let mut term = 0.5;
        for k in 0..12 {
            let kf = k as f64;
            e0 += (kf + 2.0) * term;
            e1 += (kf + 1.0) * term;
            term *= -z / (kf + 3.0);
        }
        return (e0 - e1, e1);
    }
    let em = exp(-z);
    let e0 = -expm1(-z) / z;
    let e1 = (-expm1(-z) - z * em) / (z * z);
    (e0 - e1, e1)
}

/// Cumulative product trapezoid for integrands `exp(-rate t) q(t)` sampled at
/// `t_k = t0 + k h`: the exponential factor is integrated exactly and `q` is
/// interpolated linearly on each step. Second order in `h` for smooth `q`,
/// uniformly in `rate >= 0`, which keeps stiff high-frequency kernels
/// resolved on coarse time grids.
pub fn cumulative_exp_trapezoid(rate: f64, q: &[f64], h: f64, t0: f64) -> Vec<f64> {
    let (wl, wr) = exp_weights(rate * h);
    let mut out = vec![0.0; q.len()];
    for k in 1..q.len() {
        let left_t = t0 + (k - 1) as f64 * h;
        let scale = exp(-rate * left_t) * h;
        out[k] = out[k - 1] + scale * (wl * q[k - 1] + wr * q[k]);
    }
    out
}

/// Richardson estimate of the error of a cumulative rule of order two:
/// `max_k |I_h(t_2k) - I_2h(t_2k)| / 3`, comparing the rule on all samples
/// against the rule on every other sample.
pub fn richardson_estimate(v: &[f64], h: f64, integrate: impl Fn(&[f64], f64) -> Vec<f64>) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let fine = integrate(v, h);
    let coarse_samples: Vec<f64> = v.iter().step_by(2).copied().collect();
    let coarse = integrate(&coarse_samples, 2.0 * h);
    coarse.iter().enumerate().fold(0.0_f64, |m, (k, c)| m.max((fine[2 * k] - c).abs() / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_exact_on_lines() {
        let v: Vec<f64> = (0..5).map(|k| 2.0 + 3.0 * k as f64 * 0.5).collect();
        let c = cumulative_trapezoid(&v, 0.5);
        for (k, ck) in c.iter().enumerate() {
            let t = k as f64 * 0.5;
            assert!((ck - (2.0 * t + 1.5 * t * t)).abs() < 1e-14);
        }
    }

    #[test]
    fn exp_weights_series_matches_closed_form() {
        // the closed form cancels badly for tiny z, so compare with a
        // truncated Taylor expansion there
        for &z in &[1e-8, 1e-5] {
            let (l, r) = exp_weights(z);
            let e0 = 1.0 - z / 2.0 + z * z / 6.0;
            let e1 = 0.5 - z / 3.0 + z * z / 8.0;
            assert!((r - e1).abs() < 1e-15, "z={z}: {r} vs {e1}");
            assert!((l - (e0 - e1)).abs() < 1e-15);
        }
        for &z in &[0.01, 0.049] {
            let (l, r) = exp_weights(z);
            let e0 = -expm1(-z) / z;
            let e1 = (-expm1(-z) - z * exp(-z)) / (z * z);
            assert!((r - e1).abs() < 1e-12, "z={z}: {r} vs {e1}");
            assert!((l - (e0 - e1)).abs() < 1e-12);
        }
        let (l, r) = exp_weights(0.0);
        assert_eq!((l, r), (0.5, 0.5));
    }

    #[test]
    fn exp_trapezoid_exact_for_linear_factor() {
        // integral_0^t e^{-a s} (1 + s) ds, a = 40 (stiff on h = 0.1)
        let a = 40.0;
        let h = 0.1;
        let q: Vec<f64> = (0..21).map(|k| 1.0 + k as f64 * h).collect();
        let got = cumulative_exp_trapezoid(a, &q, h, 0.0);
        for (k, g) in got.iter().enumerate() {
            let t = k as f64 * h;
            let exact = (1.0 - exp(-a * t)) / a + (1.0 - (1.0 + a * t) * exp(-a * t)) / (a * a);
            assert!((g - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn richardson_tracks_true_error() {
        let h = 0.05;
        let v: Vec<f64> = (0..41).map(|k| exp(k as f64 * h)).collect();
        let est = richardson_estimate(&v, h, cumulative_trapezoid);
        let true_err = (cumulative_trapezoid(&v, h)[40] - (exp(2.0) - 1.0)).abs();
        assert!(est > 0.5 * true_err && est < 2.0 * true_err, "{est} vs {true_err}");
    }
}
