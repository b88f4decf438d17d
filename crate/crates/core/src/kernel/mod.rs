//! Model coefficients, grids, sampled fields and the linear Green's function.

mod field;
mod green;
mod grid;
mod params;

pub use field::{SpatialField, SpectralField};
pub use green::{alpha, discrete_delta, green_spatial, green_spectral, green_surface};
pub use grid::{Axis, SpaceTimeGrid};
pub use params::ModelParams;
