//! The semilinear right-hand side `B(ψ) = Vψ + f(|ψ|²)ψ`, its spectral and
//! pseudospectral discretizations, and the catalog of potentials and
//! initial data.

mod initial;
mod nonlinearity;
mod potential;
pub(crate) mod rhs;

pub use initial::{make_initial, InitialKind};
pub use nonlinearity::{f_density, NonlinearityParams};
pub use potential::{Potential, PotentialKind, SQUARE_WELL_DEPTH, SQUARE_WELL_HALF_WIDTH};
pub use rhs::{
    b_apply_fp, b_apply_fs, g_apply, g_coeffs_fswq, potential_apply_efp, QuadratureConfig,
};
