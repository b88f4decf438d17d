//! Approximate analytic solutions of the Fisher-KPP equation
//!
//! ```text
//! u_t = D u_xx - b u + r u^2
//! ```
//!
//! built from its linear Green's function, together with an explicit
//! finite-difference oracle and a set of numerical audits.
//!
//! The crate is `no_std` (it needs `alloc`). All transcendental functions go
//! through `libm`, so results are bit-identical across hosts that share a
//! `libm` build.
//!
//! Module map:
//!
//! * [`kernel`]: model coefficients, grids, sampled fields and the Green's
//!   function pair.
//! * [`spectral`]: discrete Fourier transforms, convolutions and theorem
//!   audits.
//! * [`zeroth`]: the zeroth approximation `u = g F`, its binomial expansion
//!   and the closed-form inverse transforms.
//! * [`successive`]: the iterated functional sequence `f_1, f_2, ...` and the
//!   time-collapse audit.
//! * [`oracle`]: explicit finite-difference solver and PDE residuals.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod kernel;
pub mod math;
pub mod oracle;
pub mod quadrature;
pub mod spectral;
pub mod stencil;
pub mod successive;
pub mod verdict;
pub mod zeroth;

pub use error::{Error, Result};
pub use kernel::{Axis, ModelParams, SpaceTimeGrid, SpatialField, SpectralField};
pub use verdict::{AuditVerdict, Counterexample, Status};

pub use num_complex::Complex64;
