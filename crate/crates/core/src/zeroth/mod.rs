//! The zeroth approximation `u = g F` with `F = 1/(C - r K)`, its binomial
//! expansion, the closed-form spatial terms and surface synthesis.

mod audit;
mod closed_form;
mod solution;
mod spectral;
mod surface;

pub use audit::{audit_transform_pairs, PairAudit, PAIR_FOLDS, PAIR_TIMES, PAIR_TOLERANCE};
pub use closed_form::{closed_form_term, decaying_resolvent, first_order_spatial, Term};
pub use solution::ZerothSolution;
pub use spectral::{
    binomial_series_spectral, cumulative_kernel_integral, first_order_spectral, integration_constant,
    rational_denominator, zeroth_factor, zeroth_factor_rate, zeroth_spectral, zeta, POLE_GUARD,
};
pub use surface::{padding_factor, synthesize_surface, synthesize_surface_padded, SurfaceMethod, MAX_PADDING};
