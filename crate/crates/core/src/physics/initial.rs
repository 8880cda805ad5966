use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FracOrder, WaveField};
use crate::grid::SpectralGrid;

/// Initial data used in the numerical experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialKind {
    /// `e^{-x²/2}`
    Gaussian,
    /// `x e^{-x²/2}`
    OddGaussian,
    /// `x |x|^{α - 3/2 + 0.01} e^{-x²/2}`, which lies in `H^α` but not much
    /// beyond.
    HAlpha,
}

impl InitialKind {
    pub fn label(&self) -> &'static str {
        match self {
            InitialKind::Gaussian => "gaussian",
            InitialKind::OddGaussian => "odd-gaussian",
            InitialKind::HAlpha => "h-alpha",
        }
    }

    pub fn eval(&self, x: f64, alpha: FracOrder) -> f64 {
        let g = (-x * x / 2.0).exp();
        match self {
            InitialKind::Gaussian => g,
            InitialKind::OddGaussian => x * g,
            InitialKind::HAlpha => {
                if x == 0.0 {
                    0.0
                } else {
                    let gamma = alpha.value() - 1.5;
                    x * x.abs().powf(gamma + 0.01) * g
                }
            }
        }
    }
}

impl FromStr for InitialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(InitialKind::Gaussian),
            "odd-gaussian" => Ok(InitialKind::OddGaussian),
            "h-alpha" => Ok(InitialKind::HAlpha),
            other => Err(Error::InvalidParameter(format!("unknown initial datum '{other}'"))),
        }
    }
}

/// Samples the datum at the grid points and interpolates.
pub fn make_initial(kind: InitialKind, alpha: FracOrder, grid: SpectralGrid) -> WaveField {
    let samples: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&x| Complex64::new(kind.eval(x, alpha), 0.0))
        .collect();
    WaveField::from_samples(grid, &samples, 0.0).expect("samples match grid")
}
