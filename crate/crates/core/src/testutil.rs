//! Shared helpers for unit tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::WaveField;
use crate::grid::SpectralGrid;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_coeffs(r: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect()
}

pub(crate) fn random_field(r: &mut impl Rng, grid: SpectralGrid) -> WaveField {
    WaveField::from_coeffs(grid, random_coeffs(r, grid.n()), 0.0).unwrap()
}
