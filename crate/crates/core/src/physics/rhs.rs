use num_complex::Complex64;

use super::{NonlinearityParams, Potential};
use crate::error::{Error, Result};
use crate::field::WaveField;
use crate::transform::{pad_to, truncate_into, FftPair};

/// Quadrature points `K = k_factor · N` for the Fourier coefficients of the
/// nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    k_factor: usize,
}

impl QuadratureConfig {
    pub fn new(k_factor: usize) -> Result<Self> {
        if k_factor == 0 {
            return Err(Error::InvalidParameter("quadrature factor must be >= 1".into()));
        }
        Ok(Self { k_factor })
    }

    pub fn k_factor(&self) -> usize {
        self.k_factor
    }

    pub fn points(&self, n: usize) -> usize {
        self.k_factor * n
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { k_factor: 3 }
    }
}

/// `G(ψ) = f(|ψ|²)ψ` at the `k` equispaced points `x_j^K`.
pub fn g_apply(field: &WaveField, params: &NonlinearityParams, k: usize) -> Result<Vec<Complex64>> {
    let n = field.grid().n();
    if k < n {
        return Err(Error::InvalidParameter(format!(
            "need at least N = {n} sample points, got {k}"
        )));
    }
    let mut buf = Vec::with_capacity(k);
    pad_to(field.coeffs(), k, &mut buf);
    FftPair::new(k).inverse(&mut buf);
    buf.iter_mut().for_each(|z| *z = params.g(*z));
    Ok(buf)
}

/// `K`-point trapezoidal Fourier coefficients of `G(ψ)` on `T_N`.
pub fn g_coeffs_fswq(
    field: &WaveField,
    params: &NonlinearityParams,
    quad: QuadratureConfig,
) -> Vec<Complex64> {
    let n = field.grid().n();
    let k = quad.points(n);
    let mut buf = g_apply(field, params, k).expect("K >= N by construction");
    FftPair::new(k).forward(&mut buf);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    truncate_into(&buf, &mut out);
    out
}

/// `P_N(Vψ)` for `ψ ∈ Y_N`, computed exactly as `P_N(I_{3N}((P_{2N}V)ψ))`.
pub fn potential_apply_efp(potential: &Potential, field: &WaveField) -> Result<Vec<Complex64>> {
    let mut rhs = FsRhs::new(potential, &NonlinearityParams::linear(), field.grid().n(), QuadratureConfig::default())?;
    let mut out = vec![Complex64::new(0.0, 0.0); field.grid().n()];
    rhs.apply(field.coeffs(), &mut out);
    Ok(out)
}

/// `P_N(Vψ + G(ψ))` with the potential term by eFP and the nonlinearity by
/// `K`-point quadrature.
pub fn b_apply_fs(
    potential: &Potential,
    field: &WaveField,
    params: &NonlinearityParams,
    quad: QuadratureConfig,
) -> Result<Vec<Complex64>> {
    let mut rhs = FsRhs::new(potential, params, field.grid().n(), quad)?;
    let mut out = vec![Complex64::new(0.0, 0.0); field.grid().n()];
    rhs.apply(field.coeffs(), &mut out);
    Ok(out)
}

/// Pseudospectral right-hand side `I_N(Vψ + G(ψ))` from values at the `N`
/// grid points.
pub fn b_apply_fp(
    potential: &Potential,
    field: &WaveField,
    params: &NonlinearityParams,
) -> Result<Vec<Complex64>> {
    let mut rhs = FpRhs::new(potential, params, field.grid())?;
    let mut out = vec![Complex64::new(0.0, 0.0); field.grid().n()];
    rhs.apply(field.coeffs(), &mut out);
    Ok(out)
}

/// Reusable Fourier spectral right-hand side for a fixed `N`.
pub(crate) struct FsRhs {
    n: usize,
    params: NonlinearityParams,
    /// `P_{2N}V` at the `3N` points, absent for `V = 0`.
    v_ext: Option<Vec<Complex64>>,
    fft_ext: FftPair,
    fft_quad: FftPair,
    buf_ext: Vec<Complex64>,
    buf_quad: Vec<Complex64>,
    trunc: Vec<Complex64>,
}

impl FsRhs {
    pub(crate) fn new(
        potential: &Potential,
        params: &NonlinearityParams,
        n: usize,
        quad: QuadratureConfig,
    ) -> Result<Self> {
        let ext = 3 * n;
        let v_ext = if potential.is_zero() {
            None
        } else {
            let table = potential.fourier_table(2 * n)?;
            let mut buf = Vec::with_capacity(ext);
            pad_to(&table, ext, &mut buf);
            FftPair::new(ext).inverse(&mut buf);
            Some(buf)
        };
        Ok(Self {
            n,
            params: *params,
            v_ext,
            fft_ext: FftPair::new(ext),
            fft_quad: FftPair::new(quad.points(n)),
            buf_ext: Vec::with_capacity(ext),
            buf_quad: Vec::with_capacity(quad.points(n)),
            trunc: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    pub(crate) fn apply(&mut self, coeffs: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(coeffs.len(), self.n);
        let nonlinear = !self.params.is_linear();
        out.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        let shared = nonlinear && self.fft_quad.len() == self.fft_ext.len();

        if let Some(v) = &self.v_ext {
            pad_to(coeffs, self.fft_ext.len(), &mut self.buf_ext);
            self.fft_ext.inverse(&mut self.buf_ext);
            let params = self.params;
            for (u, &vj) in self.buf_ext.iter_mut().zip(v) {
                let psi = *u;
                *u = vj * psi;
                if shared {
                    *u += params.g(psi);
                }
            }
            self.fft_ext.forward(&mut self.buf_ext);
            truncate_into(&self.buf_ext, out);
        }
        if nonlinear && !(shared && self.v_ext.is_some()) {
            pad_to(coeffs, self.fft_quad.len(), &mut self.buf_quad);
            self.fft_quad.inverse(&mut self.buf_quad);
            let params = self.params;
            self.buf_quad.iter_mut().for_each(|z| *z = params.g(*z));
            self.fft_quad.forward(&mut self.buf_quad);
            truncate_into(&self.buf_quad, &mut self.trunc);
            out.iter_mut().zip(&self.trunc).for_each(|(o, t)| *o += t);
        }
    }
}

/// Reusable pseudospectral right-hand side.
pub(crate) struct FpRhs {
    params: NonlinearityParams,
    v_grid: Option<Vec<f64>>,
    fft: FftPair,
    buf: Vec<Complex64>,
}

impl FpRhs {
    pub(crate) fn new(
        potential: &Potential,
        params: &NonlinearityParams,
        grid: &crate::grid::SpectralGrid,
    ) -> Result<Self> {
        let v_grid = if potential.is_zero() {
            None
        } else {
            Some(potential.sample(grid)?)
        };
        Ok(Self {
            params: *params,
            v_grid,
            fft: FftPair::new(grid.n()),
            buf: vec![Complex64::new(0.0, 0.0); grid.n()],
        })
    }

    pub(crate) fn apply(&mut self, coeffs: &[Complex64], out: &mut [Complex64]) {
        self.buf.copy_from_slice(coeffs);
        self.fft.inverse(&mut self.buf);
        let params = self.params;
        match &self.v_grid {
            Some(v) => self
                .buf
                .iter_mut()
                .zip(v)
                .for_each(|(z, &vj)| *z = *z * vj + params.g(*z)),
            None => self.buf.iter_mut().for_each(|z| *z = params.g(*z)),
        }
        self.fft.forward(&mut self.buf);
        out.copy_from_slice(&self.buf);
    }
}
