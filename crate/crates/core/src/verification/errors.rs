use crate::error::{Error, Result};
use crate::field::{FracOrder, SobolevIndex, WaveField};

/// Errors at one ladder point, measured at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    /// Step size `τ` or mesh size `h`.
    pub refinement: f64,
    pub e_l2: f64,
    pub e_h_alpha_half: f64,
    pub t: f64,
}

impl ErrorSample {
    pub fn error(&self, norm: super::NormKind) -> f64 {
        match norm {
            super::NormKind::L2 => self.e_l2,
            super::NormKind::Energy => self.e_h_alpha_half,
        }
    }
}

/// `(‖ψ - ψ_ref‖_{L²}, ‖ψ - ψ_ref‖_{H^{α/2}})`, comparing on the finer of
/// the two grids.
pub fn error_pair(numerical: &WaveField, reference: &WaveField, alpha: FracOrder) -> Result<(f64, f64)> {
    if !numerical.grid().same_domain(reference.grid()) {
        return Err(Error::IncompatibleDomain(format!(
            "({}, {}) vs ({}, {})",
            numerical.grid().a(),
            numerical.grid().b(),
            reference.grid().a(),
            reference.grid().b()
        )));
    }
    let fine = if numerical.grid().n() >= reference.grid().n() {
        *numerical.grid()
    } else {
        *reference.grid()
    };
    let diff = numerical
        .project_onto(&fine)?
        .sub(&reference.project_onto(&fine)?)?;
    Ok((
        diff.sobolev_norm(SobolevIndex::L2),
        diff.sobolev_norm(SobolevIndex::energy(alpha)),
    ))
}
