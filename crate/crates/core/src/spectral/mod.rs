//! Discrete Fourier machinery under the `exp(-2 pi i s x)` convention, direct
//! and spectral convolutions, and numerical audits of the convolution
//! theorems.

mod audit;
mod convolve;
mod fft;
mod transform;

pub use audit::{
    audit_convolution_lower_bound, audit_convolution_theorem, audit_derivative_theorems, LowerBoundAudit,
    ROUGHNESS_LIMIT,
};
pub use convolve::{convolve_direct, convolve_spectral, edge_magnitude, Convolution, EDGE_DECAY};
pub use fft::FftPlan;
pub use transform::{forward_transform, inverse_transform, Transform, HERMITIAN_TOL};
