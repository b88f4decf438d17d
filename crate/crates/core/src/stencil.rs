//! Finite-difference stencils on uniform samples.

use alloc::vec;
use alloc::vec::Vec;

/// Fourth-order first derivative: five-point central stencil in the interior,
/// five-point one-sided stencils on the two samples nearest each end.
///
/// Needs at least 5 samples.
pub fn derivative4(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    assert!(n >= 5, "fourth-order derivative needs 5 samples, got {n}");
    let c = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    d[0] = c * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    d[1] = c * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
    for i in 2..n - 2 {
        d[i] = c * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
    }
    d[n - 2] = -c * (-3.0 * v[n - 1] - 10.0 * v[n - 2] + 18.0 * v[n - 3] - 6.0 * v[n - 4] + v[n - 5]);
    d[n - 1] = -c * (-25.0 * v[n - 1] + 48.0 * v[n - 2] - 36.0 * v[n - 3] + 16.0 * v[n - 4] - 3.0 * v[n - 5]);
    d
}

/// Second-order first derivative, one-sided at the ends. Needs 3 samples.
pub fn derivative2(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    assert!(n >= 3, "second-order derivative needs 3 samples, got {n}");
    let c = 0.5 / h;
    let mut d = vec![0.0; n];
    d[0] = c * (-3.0 * v[0] + 4.0 * v[1] - v[2]);
    for i in 1..n - 1 {
        d[i] = c * (v[i + 1] - v[i - 1]);
    }
    d[n - 1] = c * (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]);
    d
}

/// Second-order second derivative, one-sided at the ends. Needs 4 samples.
pub fn second_derivative2(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    assert!(n >= 4, "second-order second derivative needs 4 samples, got {n}");
    let c = 1.0 / (h * h);
    let mut d = vec![0.0; n];
    d[0] = c * (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]);
    for i in 1..n - 1 {
        d[i] = c * (v[i - 1] - 2.0 * v[i] + v[i + 1]);
    }
    d[n - 1] = c * (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]);
    d
}

/// `max |v[i-1] - 2 v[i] + v[i+1]| / max |v|`. Close to 0 for well resolved
/// smooth samples, 2 for an isolated spike.
pub fn roughness(v: &[f64]) -> f64 {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if peak == 0.0 || v.len() < 3 {
        return 0.0;
    }
    let curv = v.windows(3).fold(0.0_f64, |m, w| m.max((w[0] - 2.0 * w[1] + w[2]).abs()));
    curv / peak
}
