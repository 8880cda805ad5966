//! Discrete Fourier transforms with the `1/N` forward normalization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{wrapped_slot, SpectralGrid};

#[derive(Clone)]
pub(crate) struct FftPair {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    len: usize,
}

impl FftPair {
    pub(crate) fn new(len: usize) -> Self {
        static PLANS: OnceLock<Mutex<HashMap<usize, FftPair>>> = OnceLock::new();
        let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut plans = plans.lock().expect("fft plan cache poisoned");
        plans
            .entry(len)
            .or_insert_with(|| {
                let mut planner = FftPlanner::new();
                FftPair {
                    forward: planner.plan_fft_forward(len),
                    inverse: planner.plan_fft_inverse(len),
                    len,
                }
            })
            .clone()
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Samples to coefficients, in place, scaled by `1/len`.
    pub(crate) fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
    }

    /// Coefficients to samples, in place, unscaled.
    pub(crate) fn inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
    }
}

/// `c_l = (1/N) sum_j v_j exp(-i mu_l (x_j - a))`, returned in storage order.
pub fn forward_dft(samples: &[Complex64], grid: &SpectralGrid) -> Result<Vec<Complex64>> {
    check_len(samples.len(), grid.n())?;
    let mut buf = samples.to_vec();
    FftPair::new(grid.n()).forward(&mut buf);
    Ok(buf)
}

/// `v_j = sum_l c_l exp(i mu_l (x_j - a))` over `T_N`.
pub fn inverse_dft(coeffs: &[Complex64], grid: &SpectralGrid) -> Result<Vec<Complex64>> {
    check_len(coeffs.len(), grid.n())?;
    let mut buf = coeffs.to_vec();
    FftPair::new(grid.n()).inverse(&mut buf);
    Ok(buf)
}

/// Evaluates the trigonometric polynomial with `coeffs` (storage order over
/// `T_N`, `N = coeffs.len()`) at `k >= N` equispaced points.
pub(crate) fn pad_to(coeffs: &[Complex64], k: usize, out: &mut Vec<Complex64>) {
    let n = coeffs.len();
    out.clear();
    out.resize(k, Complex64::new(0.0, 0.0));
    for (slot, &c) in coeffs.iter().enumerate() {
        let l = crate::grid::mode_of_slot(slot, n);
        out[wrapped_slot(l, k)] = c;
    }
}

/// Reads modes `T_N` out of a length-`K` coefficient array.
pub(crate) fn truncate_into(full: &[Complex64], out: &mut [Complex64]) {
    let n = out.len();
    let k = full.len();
    for (slot, o) in out.iter_mut().enumerate() {
        let l = crate::grid::mode_of_slot(slot, n);
        *o = full[wrapped_slot(l, k)];
    }
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
