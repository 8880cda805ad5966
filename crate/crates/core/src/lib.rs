//! Solver and experiment harness for the one-dimensional space-fractional
//! nonlinear Schrödinger equation
//!
//! ```text
//! i ∂_t ψ = (-Δ)^{α/2} ψ + V(x) ψ + β |ψ|^{2σ} ψ,   x ∈ (a, b) periodic,
//! ```
//!
//! with rough (merely bounded) potentials and low-regularity power
//! nonlinearities. The main scheme is a first-order exponential wave
//! integrator whose right-hand side is discretized by the Fourier spectral
//! method: the potential term through an exact `3N`-point extended
//! pseudospectral evaluation and the nonlinearity through a `K`-point
//! quadrature. A pseudospectral variant and a Strang splitting are provided
//! for comparison and reference solutions, together with convergence-study
//! tooling and runnable checks of the inequalities the error analysis rests
//! on.

pub mod error;
pub mod field;
pub mod grid;
pub mod harness;
pub mod integrators;
pub mod physics;
pub mod transform;
pub mod verification;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use field::{
    free_propagate, frac_laplacian_apply, phi1_apply, phi1_neg_i, FracOrder, SobolevIndex,
    WaveField,
};
pub use grid::SpectralGrid;
pub use integrators::{
    evolve, evolve_final, ewi_fp_step, ewi_fs_step, ewi_fs_step_operator_form, strang_fp_step,
    IntegratorKind, SolverConfig, StepPlan, Stepper, Trajectory,
};
pub use physics::{
    b_apply_fp, b_apply_fs, f_density, g_apply, g_coeffs_fswq, make_initial,
    potential_apply_efp, InitialKind, NonlinearityParams, Potential, PotentialKind,
    QuadratureConfig,
};
pub use transform::{forward_dft, inverse_dft};
