//! Wave fields stored as Fourier coefficients, and the diagonal operators
//! acting on them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::SpectralGrid;
use crate::transform::{forward_dft, inverse_dft};

/// Fractional order of `(-Δ)^{α/2}`, restricted to `1 < α <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha <= 2.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidParameter(format!(
                "fractional order must lie in (1, 2], got {alpha}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Symbol `|μ|^α` of the fractional Laplacian.
    pub fn symbol(self, mu: f64) -> f64 {
        if self.0 == 2.0 {
            mu * mu
        } else {
            mu.abs().powf(self.0)
        }
    }
}

/// Exponent `s >= 0` of a periodic Sobolev norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub const L2: SobolevIndex = SobolevIndex(0.0);

    pub fn new(s: f64) -> Result<Self> {
        if s >= 0.0 && s.is_finite() {
            Ok(Self(s))
        } else {
            Err(Error::InvalidParameter(format!(
                "Sobolev index must be finite and >= 0, got {s}"
            )))
        }
    }

    /// The energy index `α/2`.
    pub fn energy(alpha: FracOrder) -> Self {
        Self(alpha.value() / 2.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    grid: SpectralGrid,
    coeffs: Vec<Complex64>,
    time: f64,
}

impl WaveField {
    /// Wraps coefficients given in storage order. Rejects non-finite entries.
    pub fn from_coeffs(grid: SpectralGrid, coeffs: Vec<Complex64>, time: f64) -> Result<Self> {
        if coeffs.len() != grid.n() {
            return Err(Error::LengthMismatch {
                expected: grid.n(),
                found: coeffs.len(),
            });
        }
        if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite("wave field"));
        }
        Ok(Self { grid, coeffs, time })
    }

    /// Interpolates grid samples `ψ(x_j)`.
    pub fn from_samples(grid: SpectralGrid, samples: &[Complex64], time: f64) -> Result<Self> {
        let coeffs = forward_dft(samples, &grid)?;
        Self::from_coeffs(grid, coeffs, time)
    }

    pub fn zeros(grid: SpectralGrid, time: f64) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n()],
            time,
        }
    }

    /// The single Fourier mode `l` with coefficient `c`.
    pub fn mode(grid: SpectralGrid, l: i64, c: Complex64) -> Result<Self> {
        let slot = grid.slot(l).ok_or_else(|| {
            Error::InvalidParameter(format!("mode {l} outside T_{}", grid.n()))
        })?;
        let mut f = Self::zeros(grid, 0.0);
        f.coeffs[slot] = c;
        Ok(f)
    }

    pub(crate) fn from_parts_unchecked(grid: SpectralGrid, coeffs: Vec<Complex64>, time: f64) -> Self {
        debug_assert_eq!(coeffs.len(), grid.n());
        Self { grid, coeffs, time }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// Coefficients in storage order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of centered mode `l`, zero outside `T_N`.
    pub fn coeff(&self, l: i64) -> Complex64 {
        self.grid
            .slot(l)
            .map_or(Complex64::new(0.0, 0.0), |k| self.coeffs[k])
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Physical samples `ψ(x_j)`.
    pub fn samples(&self) -> Vec<Complex64> {
        inverse_dft(&self.coeffs, &self.grid).expect("field length matches its grid")
    }

    /// Truncates or zero-pads onto `T_{n_target}` (the projection `P_N`).
    pub fn project(&self, n_target: usize) -> Result<WaveField> {
        let target = self.grid.with_modes(n_target)?;
        self.project_onto(&target)
    }

    pub fn project_onto(&self, target: &SpectralGrid) -> Result<WaveField> {
        if !self.grid.same_domain(target) {
            return Err(Error::IncompatibleDomain(format!(
                "({}, {}) vs ({}, {})",
                self.grid.a(),
                self.grid.b(),
                target.a(),
                target.b()
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); target.n()];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(target.mode(k));
        }
        Ok(Self::from_parts_unchecked(*target, coeffs, self.time))
    }

    /// Applies a real-mode multiplier `m(μ_l)` coefficient-wise.
    pub fn map_modes(&self, mut m: impl FnMut(f64) -> Complex64) -> WaveField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| m(self.grid.mu(self.grid.mode(k))) * c)
            .collect();
        Self::from_parts_unchecked(self.grid, coeffs, self.time)
    }

    pub fn scale(&self, s: Complex64) -> WaveField {
        let coeffs = self.coeffs.iter().map(|&c| c * s).collect();
        Self::from_parts_unchecked(self.grid, coeffs, self.time)
    }

    /// Coefficient-wise `self - other` on a shared grid.
    pub fn sub(&self, other: &WaveField) -> Result<WaveField> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn add(&self, other: &WaveField) -> Result<WaveField> {
        self.zip_with(other, |x, y| x + y)
    }

    fn zip_with(
        &self,
        other: &WaveField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<WaveField> {
        if self.grid != other.grid {
            return Err(Error::IncompatibleDomain(format!(
                "grids with {} and {} modes",
                self.grid.n(),
                other.grid.n()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&x, &y)| f(x, y))
            .collect();
        Ok(Self::from_parts_unchecked(self.grid, coeffs, self.time))
    }

    /// `‖φ‖²_{H^s} = Σ (1 + μ_l²)^s |φ_l|²` over the field's own modes.
    pub fn sobolev_norm(&self, s: SobolevIndex) -> f64 {
        self.weighted_sum(|mu| (1.0 + mu * mu).powf(s.value())).sqrt()
    }

    /// `|φ|²_{H^s} = Σ |μ_l|^{2s} |φ_l|²`.
    pub fn sobolev_seminorm(&self, s: SobolevIndex) -> f64 {
        self.weighted_sum(|mu| {
            if mu == 0.0 {
                if s.value() == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                mu.abs().powf(2.0 * s.value())
            }
        })
        .sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(SobolevIndex::L2)
    }

    fn weighted_sum(&self, w: impl Fn(f64) -> f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| w(self.grid.mu(self.grid.mode(k))) * c.norm_sqr())
            .sum()
    }
}

/// `((-Δ)^{α/2} φ)_l = |μ_l|^α φ_l`.
pub fn frac_laplacian_apply(field: &WaveField, alpha: FracOrder) -> WaveField {
    field.map_modes(|mu| Complex64::new(alpha.symbol(mu), 0.0))
}

/// Exact linear flow `e^{-i τ |μ_l|^α}` over time `tau`; advances the clock.
pub fn free_propagate(field: &WaveField, tau: f64, alpha: FracOrder) -> WaveField {
    let out = field.map_modes(|mu| Complex64::from_polar(1.0, -tau * alpha.symbol(mu)));
    let t = field.time() + tau;
    out.with_time(t)
}

/// Applies `φ₁(-i τ |μ_l|^α)` mode by mode.
pub fn phi1_apply(field: &WaveField, tau: f64, alpha: FracOrder) -> WaveField {
    field.map_modes(|mu| phi1_neg_i(tau * alpha.symbol(mu)))
}

/// `φ₁(-iθ) = (1 - e^{-iθ}) / (iθ)` for real `θ`, stable near zero.
pub fn phi1_neg_i(theta: f64) -> Complex64 {
    if theta.abs() < 1e-6 {
        // 1 - iθ/2 - θ²/6 + iθ³/24
        let t2 = theta * theta;
        Complex64::new(1.0 - t2 / 6.0, -theta / 2.0 + theta * t2 / 24.0)
    } else {
        // (1 - cos θ + i sin θ) / (iθ) = (sin θ - i(1 - cos θ)) / θ,
        // with 1 - cos θ = 2 sin²(θ/2) to keep precision at moderate θ.
        let half = (theta / 2.0).sin();
        Complex64::new(theta.sin() / theta, -2.0 * half * half / theta)
    }
}
