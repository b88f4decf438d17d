//! Explicit finite-difference oracle, PDE residuals and field comparison.

mod compare;
mod fd;
mod residual;

pub use compare::{compare_fields, ErrorSummary, SliceError, TimeWindow};
pub use fd::{
    exact_linear_gaussian, gaussian_ic, solve_fd, Coefficients, FdSolution, SolverConfig, BLOWUP, MAX_STABILITY_FACTOR,
};
pub use residual::{pde_residual, Residual};
