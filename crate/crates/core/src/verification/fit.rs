use std::fmt;

use super::ErrorSample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    L2,
    /// The `H^{α/2}` norm.
    Energy,
}

impl NormKind {
    pub const BOTH: [NormKind; 2] = [NormKind::L2, NormKind::Energy];

    pub fn label(&self) -> &'static str {
        match self {
            NormKind::L2 => "l2",
            NormKind::Energy => "h_alpha_half",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Least-squares line through `(log refinement, log error)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points_used: usize,
    pub points_discarded: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Errors below this are round-off, not discretization error.
    pub round_off_floor: f64,
    /// Estimated error of the reference solution in the fitted norm.
    pub reference_error: Option<f64>,
    /// Points with error below `contamination_factor · reference_error`
    /// are discarded.
    pub contamination_factor: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            round_off_floor: 1e-10,
            reference_error: None,
            contamination_factor: 10.0,
        }
    }
}

impl FitOptions {
    pub fn with_reference_error(mut self, e: f64) -> Self {
        self.reference_error = Some(e);
        self
    }

    /// Whether an error value is usable for fitting.
    pub fn keeps(&self, error: f64) -> bool {
        let floor = self
            .reference_error
            .map_or(self.round_off_floor, |r| (self.contamination_factor * r).max(self.round_off_floor));
        error.is_finite() && error >= floor
    }
}

pub fn fit_order(samples: &[ErrorSample], which: NormKind) -> Result<OrderFit> {
    fit_order_with(samples, which, &FitOptions::default())
}

pub fn fit_order_with(samples: &[ErrorSample], which: NormKind, opts: &FitOptions) -> Result<OrderFit> {
    let mut refinements: Vec<f64> = samples.iter().map(|s| s.refinement).collect();
    refinements.sort_by(f64::total_cmp);
    if refinements.windows(2).any(|w| w[0] == w[1]) || refinements.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::InvalidParameter(
            "refinements must be positive and distinct".into(),
        ));
    }
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| opts.keeps(s.error(which)))
        .map(|s| (s.refinement.ln(), s.error(which).ln()))
        .collect();
    let used = points.len();
    if used < 2 {
        return Err(Error::InsufficientPoints { usable: used });
    }
    let n = used as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(OrderFit {
        slope,
        intercept,
        r_squared,
        points_used: used,
        points_discarded: samples.len() - used,
    })
}

/// Indices `i` (in coarse-to-fine order) where the error grew by more than
/// 10% from the previous, coarser point.
pub fn monotonicity_violations(samples: &[ErrorSample], which: NormKind) -> Vec<usize> {
    let mut sorted: Vec<&ErrorSample> = samples.iter().collect();
    sorted.sort_by(|a, b| b.refinement.total_cmp(&a.refinement));
    sorted
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].error(which) > 1.1 * w[0].error(which))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Convergence rates predicted for a solution of regularity `H^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedOrders {
    pub alpha: f64,
    pub m: f64,
    pub temporal_l2: f64,
    /// 1/2 in general, 1 under the stronger regularity assumptions.
    pub temporal_energy: f64,
    pub spatial_l2: f64,
    pub spatial_energy: f64,
}

impl ExpectedOrders {
    pub fn new(alpha: f64, m: f64, temporal_energy: f64) -> Self {
        Self {
            alpha,
            m,
            temporal_l2: 1.0,
            temporal_energy,
            spatial_l2: m,
            spatial_energy: m - alpha / 2.0,
        }
    }

    /// Bounded potential or `C¹` nonlinearity: `√τ` in the energy norm.
    pub fn rough(alpha: f64, m: f64) -> Self {
        Self::new(alpha, m, 0.5)
    }

    pub fn temporal(&self, norm: NormKind) -> f64 {
        match norm {
            NormKind::L2 => self.temporal_l2,
            NormKind::Energy => self.temporal_energy,
        }
    }

    pub fn spatial(&self, norm: NormKind) -> f64 {
        match norm {
            NormKind::L2 => self.spatial_l2,
            NormKind::Energy => self.spatial_energy,
        }
    }
}
