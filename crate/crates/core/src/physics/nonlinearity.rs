use num_complex::Complex64;

use crate::error::{Error, Result};

/// Power nonlinearity `f(ρ) = β ρ^σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearityParams {
    beta: f64,
    sigma: f64,
}

impl NonlinearityParams {
    pub fn new(beta: f64, sigma: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("beta must be finite, got {beta}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be > 0, got {sigma}")));
        }
        Ok(Self { beta, sigma })
    }

    /// The linear equation (`β = 0`).
    pub fn linear() -> Self {
        Self { beta: 0.0, sigma: 1.0 }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_linear(&self) -> bool {
        self.beta == 0.0
    }

    /// `f(ρ)`; rejects negative densities.
    pub fn density(&self, rho: f64) -> Result<f64> {
        if rho < 0.0 {
            return Err(Error::InvalidParameter(format!("density must be >= 0, got {rho}")));
        }
        Ok(self.density_unchecked(rho))
    }

    #[inline]
    pub(crate) fn density_unchecked(&self, rho: f64) -> f64 {
        if rho == 0.0 || self.beta == 0.0 {
            0.0
        } else if self.sigma == 1.0 {
            self.beta * rho
        } else {
            self.beta * rho.powf(self.sigma)
        }
    }

    /// `G(z) = f(|z|²) z`.
    #[inline]
    pub fn g(&self, z: Complex64) -> Complex64 {
        z * self.density_unchecked(z.norm_sqr())
    }
}

/// `f(ρ) = β ρ^σ`.
pub fn f_density(rho: f64, params: &NonlinearityParams) -> Result<f64> {
    params.density(rho)
}
