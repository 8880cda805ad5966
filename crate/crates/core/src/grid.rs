//! Periodic 1D grids and the centered mode set `T_N`.
//!
//! Coefficient arrays are stored in FFT-natural order
//! `[0, 1, ..., N/2-1, -N/2, ..., -1]`; [`SpectralGrid::mode`] and
//! [`SpectralGrid::slot`] translate between storage slots and centered
//! mode numbers.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    a: f64,
    b: f64,
    n: usize,
}

impl SpectralGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidGrid(format!(
                "need finite a < b, got ({a}, {b})"
            )));
        }
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "mode count must be even and >= 2, got {n}"
            )));
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// Mesh size `(b - a) / N`.
    pub fn h(&self) -> f64 {
        self.length() / self.n as f64
    }

    /// Grid point `x_j = a + j h`.
    pub fn x(&self, j: usize) -> f64 {
        self.a + j as f64 * self.h()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Wavenumber `2 pi l / (b - a)` of mode `l`.
    pub fn mu(&self, l: i64) -> f64 {
        2.0 * PI * l as f64 / self.length()
    }

    /// Centered mode number stored in slot `k`.
    pub fn mode(&self, k: usize) -> i64 {
        mode_of_slot(k, self.n)
    }

    /// Storage slot of mode `l`, if `l` is in `T_N`.
    pub fn slot(&self, l: i64) -> Option<usize> {
        slot_of_mode(l, self.n)
    }

    /// Wavenumbers in storage order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.mu(self.mode(k))).collect()
    }

    /// The grid with the same domain and `n` modes.
    pub fn with_modes(&self, n: usize) -> Result<Self> {
        Self::new(self.a, self.b, n)
    }

    pub fn same_domain(&self, other: &SpectralGrid) -> bool {
        self.a == other.a && self.b == other.b
    }
}

pub(crate) fn mode_of_slot(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

pub(crate) fn slot_of_mode(l: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if l >= -half && l < half {
        Some(l.rem_euclid(n as i64) as usize)
    } else {
        None
    }
}

/// Slot of mode `l` in a length-`n` array, wrapping modes outside `T_n`.
pub(crate) fn wrapped_slot(l: i64, n: usize) -> usize {
    l.rem_euclid(n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_domain_grid() {
        let g = SpectralGrid::new(-16.0, 16.0, 8).unwrap();
        assert_eq!(g.h(), 4.0);
        assert!((g.mu(1) - PI / 16.0).abs() < 1e-15);
        assert_eq!(g.mu(0), 0.0);
        assert_eq!(g.mu(-3), -g.mu(3));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SpectralGrid::new(-16.0, 16.0, 3).is_err());
        assert!(SpectralGrid::new(-16.0, 16.0, 0).is_err());
        assert!(SpectralGrid::new(1.0, 1.0, 8).is_err());
        assert!(SpectralGrid::new(2.0, 1.0, 8).is_err());
    }

    #[test]
    fn unit_wavenumbers_on_two_pi() {
        let g = SpectralGrid::new(0.0, 2.0 * PI, 4).unwrap();
        for l in -2..2 {
            assert!((g.mu(l) - l as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn slots_round_trip() {
        let g = SpectralGrid::new(0.0, 1.0, 10).unwrap();
        for k in 0..10 {
            assert_eq!(g.slot(g.mode(k)), Some(k));
        }
        assert_eq!(g.slot(5), None);
        assert_eq!(g.slot(-5), Some(5));
        assert!((g.h() * 10.0 - 1.0).abs() <= f64::EPSILON);
    }
}
