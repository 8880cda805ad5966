use num_complex::Complex64;
use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{mode_of_slot, slot_of_mode, wrapped_slot, SpectralGrid};
use crate::transform::FftPair;

/// Depth of the square well `V = -4` on `(-2, 2)`.
pub const SQUARE_WELL_DEPTH: f64 = -4.0;
pub const SQUARE_WELL_HALF_WIDTH: f64 = 2.0;

/// Decay exponent `1/2 + 0.01` of the random potential coefficients.
const RANDOM_DECAY_EXPONENT: f64 = 0.51;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    None,
    SquareWell,
    RandomDecay { seed: u64, modes: usize },
    Custom,
}

impl PotentialKind {
    pub fn label(&self) -> String {
        match self {
            PotentialKind::None => "none".into(),
            PotentialKind::SquareWell => "square-well".into(),
            PotentialKind::RandomDecay { seed, modes } => {
                format!("random-decay(seed={seed},modes={modes})")
            }
            PotentialKind::Custom => "custom".into(),
        }
    }
}

/// A real, time-independent potential held as a Fourier table over `T_M`
/// (storage order).
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    a: f64,
    b: f64,
    kind: PotentialKind,
    table: Vec<Complex64>,
}

impl Potential {
    pub fn none(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            kind: PotentialKind::None,
            table: Vec::new(),
        }
    }

    /// `V = -4` on `(-2, 2)`, zero elsewhere, with exact Fourier
    /// coefficients tabulated over `T_modes`.
    pub fn square_well(a: f64, b: f64, modes: usize) -> Result<Self> {
        if !(a <= -SQUARE_WELL_HALF_WIDTH && b >= SQUARE_WELL_HALF_WIDTH) {
            return Err(Error::InvalidParameter(format!(
                "square well (-2, 2) does not fit in ({a}, {b})"
            )));
        }
        check_modes(modes)?;
        let table = (0..modes)
            .map(|k| square_well_coeff(a, b, mode_of_slot(k, modes)))
            .collect();
        Ok(Self {
            a,
            b,
            kind: PotentialKind::SquareWell,
            table,
        })
    }

    /// Random potential with coefficients `x_l / |μ_l|^{0.51}`, `x_l`
    /// uniform in the open square `(-1/2, 1/2)²`, and `v_0 = 1`; the real
    /// part is taken coefficient-wise. Only modes in `T_{min(m_modes,
    /// max_modes)}` are tabulated. Each `x_l` comes from its own ChaCha8
    /// stream keyed by `(seed, l)`, so a mode's draw does not depend on how
    /// many modes are kept.
    pub fn random_decay(a: f64, b: f64, seed: u64, m_modes: usize, max_modes: usize) -> Result<Self> {
        check_modes(m_modes)?;
        check_modes(max_modes)?;
        let kept = m_modes.min(max_modes);
        let grid = SpectralGrid::new(a, b, kept)?;
        let half = (m_modes / 2) as i64;
        let raw = |l: i64| -> Complex64 {
            if l == 0 {
                Complex64::new(1.0, 0.0)
            } else if l < -half || l >= half {
                Complex64::new(0.0, 0.0)
            } else {
                let x = uniform_pair(seed, l);
                x / grid.mu(l).abs().powf(RANDOM_DECAY_EXPONENT)
            }
        };
        let table = (0..kept)
            .map(|k| {
                let l = mode_of_slot(k, kept);
                (raw(l) + raw(-l).conj()) * 0.5
            })
            .collect();
        Ok(Self {
            a,
            b,
            kind: PotentialKind::RandomDecay {
                seed,
                modes: m_modes,
            },
            table,
        })
    }

    /// A user-supplied table; must be Hermitian (real `V`).
    pub fn custom(a: f64, b: f64, table: Vec<Complex64>) -> Result<Self> {
        check_modes(table.len())?;
        let p = Self {
            a,
            b,
            kind: PotentialKind::Custom,
            table,
        };
        let scale = p.table.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if p.hermitian_defect() > 1e-12 * scale.max(1.0) {
            return Err(Error::InvalidParameter(
                "potential table is not Hermitian (V must be real)".into(),
            ));
        }
        Ok(p)
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.kind == PotentialKind::None || self.table.iter().all(|c| c.norm() == 0.0)
    }

    /// The stored table, storage order over `T_M`.
    pub fn table(&self) -> &[Complex64] {
        &self.table
    }

    /// Number of tabulated modes `M` (0 for the zero potential).
    pub fn table_modes(&self) -> usize {
        self.table.len()
    }

    /// Coefficient `v_l`; zero beyond the table.
    pub fn coeff(&self, l: i64) -> Complex64 {
        match self.kind {
            PotentialKind::SquareWell => square_well_coeff(self.a, self.b, l),
            _ => slot_of_mode(l, self.table.len().max(2))
                .filter(|_| !self.table.is_empty())
                .map_or(Complex64::new(0.0, 0.0), |k| self.table[k]),
        }
    }

    /// `P_modes V` in storage order over `T_modes`.
    pub fn fourier_table(&self, modes: usize) -> Result<Vec<Complex64>> {
        check_modes(modes)?;
        match self.kind {
            PotentialKind::None => Ok(vec![Complex64::new(0.0, 0.0); modes]),
            PotentialKind::SquareWell => Ok((0..modes)
                .map(|k| square_well_coeff(self.a, self.b, mode_of_slot(k, modes)))
                .collect()),
            _ if self.table.len() < modes => Err(Error::PotentialTooShort {
                needed: modes,
                available: self.table.len(),
            }),
            _ => Ok((0..modes)
                .map(|k| self.table[wrapped_slot(mode_of_slot(k, modes), self.table.len())])
                .collect()),
        }
    }

    /// `V(x_j)` from the defining formula at the grid points: the indicator
    /// for the square well, the full tabulated sum otherwise.
    pub fn sample(&self, grid: &SpectralGrid) -> Result<Vec<f64>> {
        self.check_domain(grid)?;
        let n = grid.n();
        Ok(match self.kind {
            PotentialKind::None => vec![0.0; n],
            PotentialKind::SquareWell => grid
                .points()
                .iter()
                .map(|&x| {
                    if x > -SQUARE_WELL_HALF_WIDTH && x < SQUARE_WELL_HALF_WIDTH {
                        SQUARE_WELL_DEPTH
                    } else {
                        0.0
                    }
                })
                .collect(),
            _ => {
                // fold the table onto T_N: e^{iμ_l(x_j - a)} only sees l mod N
                let mut buf = vec![Complex64::new(0.0, 0.0); n];
                let m = self.table.len();
                for (k, &c) in self.table.iter().enumerate() {
                    buf[wrapped_slot(mode_of_slot(k, m), n)] += c;
                }
                FftPair::new(n).inverse(&mut buf);
                buf.into_iter().map(|v| v.re).collect()
            }
        })
    }

    pub(crate) fn check_domain(&self, grid: &SpectralGrid) -> Result<()> {
        if grid.a() == self.a && grid.b() == self.b {
            Ok(())
        } else {
            Err(Error::IncompatibleDomain(format!(
                "potential on ({}, {}), grid on ({}, {})",
                self.a,
                self.b,
                grid.a(),
                grid.b()
            )))
        }
    }

    /// `max |v_{-l} - conj(v_l)|` over representable pairs.
    pub fn hermitian_defect(&self) -> f64 {
        let m = self.table.len();
        (0..m)
            .filter_map(|k| {
                let l = mode_of_slot(k, m);
                slot_of_mode(-l, m).map(|j| (self.table[j] - self.table[k].conj()).norm())
            })
            .fold(0.0, f64::max)
    }
}

fn check_modes(modes: usize) -> Result<()> {
    if modes >= 2 && modes % 2 == 0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mode count must be even and >= 2, got {modes}"
        )))
    }
}

/// `(1/|Ω|) ∫_{-w}^{w} D e^{-iμ_l(x-a)} dx = (D/|Ω|) e^{iμ_l a} 2 sin(μ_l w)/μ_l`.
fn square_well_coeff(a: f64, b: f64, l: i64) -> Complex64 {
    let len = b - a;
    let w = SQUARE_WELL_HALF_WIDTH;
    if l == 0 {
        return Complex64::new(SQUARE_WELL_DEPTH * 2.0 * w / len, 0.0);
    }
    let mu = 2.0 * std::f64::consts::PI * l as f64 / len;
    let magnitude = SQUARE_WELL_DEPTH * 2.0 * (mu * w).sin() / (mu * len);
    // e^{iμ_l a} with the whole turns removed, so it is exactly ±1 when
    // μ_l a is a multiple of π
    let turns = l as f64 * a / len;
    let frac = turns - turns.round();
    if frac == 0.0 {
        Complex64::new(magnitude, 0.0)
    } else if frac.abs() == 0.5 {
        Complex64::new(-magnitude, 0.0)
    } else {
        Complex64::from_polar(magnitude, 2.0 * std::f64::consts::PI * frac)
    }
}

fn uniform_pair(seed: u64, l: i64) -> Complex64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(l as u64);
    let re: f64 = rng.sample(Open01);
    let im: f64 = rng.sample(Open01);
    Complex64::new(re - 0.5, im - 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_well_mean_and_symmetry() {
        let v = Potential::square_well(-16.0, 16.0, 256).unwrap();
        assert!((v.coeff(0).re + 0.5).abs() < 1e-15);
        assert!(v.hermitian_defect() < 1e-15);
        // a = -16 puts a factor (-1)^l in front of the sinc
        let mu = std::f64::consts::PI / 16.0;
        let want = -4.0 * (2.0 * mu).sin() / (16.0 * mu);
        assert!((v.coeff(1).re + want).abs() < 1e-15);
        assert!((v.coeff(2).re - (-4.0 * (4.0 * mu).sin() / (32.0 * mu))).abs() < 1e-15);
    }

    #[test]
    fn square_well_partial_sums_stay_in_range() {
        // Gibbs overshoot of a jump of 4 is about 9% of the jump
        let v = Potential::square_well(-16.0, 16.0, 512).unwrap();
        let fine = SpectralGrid::new(-16.0, 16.0, 8192).unwrap();
        let mut buf = vec![Complex64::new(0.0, 0.0); 8192];
        crate::transform::pad_to(v.table(), 8192, &mut buf);
        FftPair::new(8192).inverse(&mut buf);
        let (lo, hi) = buf.iter().fold((f64::MAX, f64::MIN), |(lo, hi), c| {
            (lo.min(c.re), hi.max(c.re))
        });
        assert!(lo > -4.0 - 0.1 * 4.0 && hi < 0.1 * 4.0, "range [{lo}, {hi}]");
        // imaginary part only from the unpaired Nyquist mode
        let max_im = buf.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        assert!(max_im <= v.coeff(-256).norm() + 1e-12);
        // centre of the well is near -4
        let centre = buf[fine.n() / 2].re;
        assert!((centre + 4.0).abs() < 0.05, "V(0) = {centre}");
    }

    #[test]
    fn random_decay_contract() {
        let v = Potential::random_decay(-16.0, 16.0, 7, 1 << 18, 1024).unwrap();
        assert_eq!(v.table_modes(), 1024);
        assert_eq!(v.coeff(0), Complex64::new(1.0, 0.0));
        assert!(v.hermitian_defect() == 0.0);
        let g = SpectralGrid::new(-16.0, 16.0, 1024).unwrap();
        for k in 1..1024 {
            let l = g.mode(k);
            let bound = std::f64::consts::FRAC_1_SQRT_2 / g.mu(l).abs().powf(0.51);
            assert!(v.coeff(l).norm() <= bound, "mode {l}");
        }
        let again = Potential::random_decay(-16.0, 16.0, 7, 1 << 18, 1024).unwrap();
        assert_eq!(v, again);
        let other = Potential::random_decay(-16.0, 16.0, 8, 1 << 18, 1024).unwrap();
        assert_ne!(v.table(), other.table());
    }

    #[test]
    fn random_decay_is_truncation_invariant() {
        let big = Potential::random_decay(-16.0, 16.0, 3, 1 << 18, 4096).unwrap();
        let small = Potential::random_decay(-16.0, 16.0, 3, 1 << 18, 256).unwrap();
        assert_eq!(big.fourier_table(256).unwrap(), small.fourier_table(256).unwrap());
        assert!(matches!(
            small.fourier_table(512),
            Err(Error::PotentialTooShort { needed: 512, available: 256 })
        ));
    }

    #[test]
    fn table_sampling_matches_direct_sum() {
        let v = Potential::random_decay(-16.0, 16.0, 5, 64, 64).unwrap();
        let g = SpectralGrid::new(-16.0, 16.0, 16).unwrap();
        let samples = v.sample(&g).unwrap();
        for (j, s) in samples.iter().enumerate() {
            let x = g.x(j);
            let direct: Complex64 = (0..64)
                .map(|k| {
                    let l = mode_of_slot(k, 64);
                    v.table()[k] * Complex64::from_polar(1.0, g.mu(l) * (x - g.a()))
                })
                .sum();
            assert!((s - direct.re).abs() < 1e-12);
        }
    }

    #[test]
    fn custom_rejects_complex_potential() {
        let mut t = vec![Complex64::new(0.0, 0.0); 8];
        t[1] = Complex64::new(1.0, 0.0);
        assert!(Potential::custom(-1.0, 1.0, t.clone()).is_err());
        t[7] = Complex64::new(1.0, 0.0);
        assert!(Potential::custom(-1.0, 1.0, t).is_ok());
    }
}
