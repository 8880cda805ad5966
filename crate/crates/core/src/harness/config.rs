use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FracOrder;
use crate::grid::SpectralGrid;
use crate::harness::cache::read_field;
use crate::integrators::{IntegratorKind, SolverConfig};
use crate::physics::{InitialKind, NonlinearityParams, Potential, QuadratureConfig};
use crate::verification::ExpectedOrders;

/// Mode count `M` of the random potential before truncation.
pub const RANDOM_DECAY_MODES: usize = 1 << 18;

pub const DEFAULT_TEMPORAL_TOLERANCE: f64 = 0.15;
pub const DEFAULT_SPATIAL_TOLERANCE: f64 = 0.2;
pub const DEFAULT_REF_TAU: f64 = 1e-5;
pub const DEFAULT_REF_N: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialSpec {
    None,
    SquareWell,
    RandomDecay { seed: u64, modes: usize },
    /// A Fourier table stored in the binary field format.
    File(PathBuf),
}

impl PotentialSpec {
    pub fn random_decay(seed: u64) -> Self {
        PotentialSpec::RandomDecay {
            seed,
            modes: RANDOM_DECAY_MODES,
        }
    }

    /// Builds the potential with its table truncated to `T_{max_modes}`.
    pub fn build(&self, a: f64, b: f64, max_modes: usize) -> Result<Potential> {
        match self {
            PotentialSpec::None => Ok(Potential::none(a, b)),
            PotentialSpec::SquareWell => Potential::square_well(a, b, max_modes),
            PotentialSpec::RandomDecay { seed, modes } => {
                Potential::random_decay(a, b, *seed, *modes, max_modes)
            }
            PotentialSpec::File(path) => {
                let rec = read_field(path)?;
                if rec.a != a || rec.b != b {
                    return Err(Error::IncompatibleDomain(format!(
                        "{} holds a potential on ({}, {}), expected ({a}, {b})",
                        path.display(),
                        rec.a,
                        rec.b
                    )));
                }
                Potential::custom(a, b, rec.coeffs)
            }
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            PotentialSpec::RandomDecay { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            PotentialSpec::RandomDecay { modes, .. } => PotentialSpec::RandomDecay { seed, modes },
            other => other,
        }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::None => f.write_str("none"),
            PotentialSpec::SquareWell => f.write_str("square-well"),
            PotentialSpec::RandomDecay { .. } => f.write_str("random-decay"),
            PotentialSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// Parses `none | square-well | random-decay | file:PATH`. Random potentials
/// get seed 0; use [`PotentialSpec::with_seed`].
impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(PotentialSpec::None),
            "square-well" => Ok(PotentialSpec::SquareWell),
            "random-decay" => Ok(PotentialSpec::random_decay(0)),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(PotentialSpec::File(PathBuf::from(p))),
                _ => Err(Error::InvalidParameter(format!("unknown potential '{s}'"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyMode {
    Simulate,
    ConvergeTime,
    ConvergeSpace,
    Verify,
}

impl StudyMode {
    pub fn label(&self) -> &'static str {
        match self {
            StudyMode::Simulate => "simulate",
            StudyMode::ConvergeTime => "converge-time",
            StudyMode::ConvergeSpace => "converge-space",
            StudyMode::Verify => "verify",
        }
    }
}

/// Refinement ladder: step sizes for temporal studies, grid sizes for
/// spatial ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Ladder {
    Time(Vec<f64>),
    Space(Vec<usize>),
}

impl Ladder {
    pub fn len(&self) -> usize {
        match self {
            Ladder::Time(v) => v.len(),
            Ladder::Space(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> StudyMode {
        match self {
            Ladder::Time(_) => StudyMode::ConvergeTime,
            Ladder::Space(_) => StudyMode::ConvergeSpace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceSpec {
    pub integrator: IntegratorKind,
    pub tau: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub a: f64,
    pub b: f64,
    pub alpha: FracOrder,
    pub nonlinearity: NonlinearityParams,
    pub potential: PotentialSpec,
    pub initial: InitialKind,
    pub t_final: f64,
    /// Integrator run at every ladder point.
    pub integrator: IntegratorKind,
    pub quad: QuadratureConfig,
    pub ladder: Ladder,
    /// Temporal studies run every ladder point on the reference grid;
    /// spatial studies use the reference step.
    pub reference: ReferenceSpec,
    pub expected: ExpectedOrders,
    /// Allowed `|slope - expected|`.
    pub tolerance: f64,
    /// Also compute a once-coarsened reference to estimate the reference's
    /// own error, which sets the contamination floor of the fits.
    pub estimate_reference_error: bool,
    pub output_dir: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
}

impl StudyConfig {
    /// Temporal study on `(-16, 16)` with grid size `n`; Strang reference at
    /// a hundredth of the smallest step.
    pub fn temporal(
        alpha: FracOrder,
        nonlinearity: NonlinearityParams,
        potential: PotentialSpec,
        initial: InitialKind,
        n: usize,
        taus: Vec<f64>,
    ) -> Self {
        let tau_min = taus.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            a: -16.0,
            b: 16.0,
            alpha,
            nonlinearity,
            potential,
            initial,
            t_final: 1.0,
            integrator: IntegratorKind::EwiFs,
            quad: QuadratureConfig::default(),
            ladder: Ladder::Time(taus),
            reference: ReferenceSpec {
                integrator: IntegratorKind::StrangFp,
                tau: tau_min / 100.0,
                n,
            },
            expected: ExpectedOrders::rough(alpha.value(), alpha.value()),
            tolerance: DEFAULT_TEMPORAL_TOLERANCE,
            estimate_reference_error: true,
            output_dir: None,
            cache_dir: None,
        }
    }

    /// Spatial study on `(-16, 16)`: EWI-FS reference on `T_{2^12}` with
    /// `τ = 1e-5` shared by every ladder point.
    pub fn spatial(
        alpha: FracOrder,
        nonlinearity: NonlinearityParams,
        potential: PotentialSpec,
        initial: InitialKind,
        ns: Vec<usize>,
    ) -> Self {
        Self {
            a: -16.0,
            b: 16.0,
            alpha,
            nonlinearity,
            potential,
            initial,
            t_final: 1.0,
            integrator: IntegratorKind::EwiFs,
            quad: QuadratureConfig::default(),
            ladder: Ladder::Space(ns),
            reference: ReferenceSpec {
                integrator: IntegratorKind::EwiFs,
                tau: DEFAULT_REF_TAU,
                n: DEFAULT_REF_N,
            },
            expected: ExpectedOrders::rough(alpha.value(), alpha.value()),
            tolerance: DEFAULT_SPATIAL_TOLERANCE,
            estimate_reference_error: true,
            output_dir: None,
            cache_dir: None,
        }
    }

    pub fn mode(&self) -> StudyMode {
        self.ladder.mode()
    }

    pub fn validate(&self) -> Result<()> {
        SpectralGrid::new(self.a, self.b, self.reference.n)?;
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_final must be > 0, got {}", self.t_final)));
        }
        if !(self.reference.tau > 0.0 && self.reference.tau.is_finite()) {
            return Err(Error::InvalidParameter("reference tau must be > 0".into()));
        }
        if self.ladder.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "ladder needs at least 3 points, got {}",
                self.ladder.len()
            )));
        }
        if (self.expected.alpha - self.alpha.value()).abs() > 1e-12 {
            return Err(Error::InvalidParameter("expected orders were set up for a different alpha".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter("slope tolerance must be > 0".into()));
        }
        match &self.ladder {
            Ladder::Time(taus) => {
                let values: Vec<f64> = taus.clone();
                check_monotone(&values)?;
                if let Some(t) = taus.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
                    return Err(Error::InvalidParameter(format!("ladder step {t} must be > 0")));
                }
                let tau_min = taus.iter().copied().fold(f64::INFINITY, f64::min);
                if self.reference.tau > tau_min / 10.0 * (1.0 + 1e-12) {
                    return Err(Error::InvalidParameter(format!(
                        "reference tau {} must be at most a tenth of the smallest ladder step {tau_min}",
                        self.reference.tau
                    )));
                }
            }
            Ladder::Space(ns) => {
                let values: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
                check_monotone(&values)?;
                for &n in ns {
                    SpectralGrid::new(self.a, self.b, n)?;
                }
                let n_max = ns.iter().copied().max().unwrap_or(0);
                if self.reference.n < 2 * n_max {
                    return Err(Error::InvalidParameter(format!(
                        "reference grid {} must be at least twice the finest ladder grid {n_max}",
                        self.reference.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Grid size at which every ladder simulation and the reference agree to
    /// hold the potential table.
    pub fn table_modes(&self) -> usize {
        2 * self.reference.n
    }

    pub fn build_potential(&self) -> Result<Arc<Potential>> {
        self.potential
            .build(self.a, self.b, self.table_modes())
            .map(Arc::new)
    }

    pub fn solver_config(
        &self,
        potential: Arc<Potential>,
        tau: f64,
        integrator: IntegratorKind,
    ) -> Result<SolverConfig> {
        Ok(SolverConfig::new(self.alpha, self.nonlinearity, potential, tau, self.t_final, integrator)?
            .with_quadrature(self.quad))
    }
}

fn check_monotone(values: &[f64]) -> Result<()> {
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    if increasing || decreasing {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("ladder {values:?} is not strictly monotone")))
    }
}
