use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::WaveField;
use crate::grid::SpectralGrid;
use crate::harness::cache::{fnv1a64, CacheKey, CacheOutcome, ReferenceCache, FORMAT_VERSION};
use crate::harness::config::{Ladder, ReferenceSpec, StudyConfig, StudyMode};
use crate::integrators::evolve_final;
use crate::physics::{make_initial, Potential};
use crate::verification::{
    error_pair, fit_order_with, monotonicity_violations, ErrorSample, FitOptions, NormKind, OrderFit,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Too few points above the error floor to fit a slope.
    Floor,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Floor => "floor",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "floor" => Ok(Verdict::Floor),
            other => Err(Error::InvalidParameter(format!("unknown verdict '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub norm: NormKind,
    pub fit: Option<OrderFit>,
    pub expected: f64,
    /// Estimated error of the reference in this norm, if measured.
    pub reference_error: Option<f64>,
    pub verdict: Verdict,
}

impl NormResult {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

/// A ladder point whose simulation did not finish.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub refinement: f64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub config: StudyConfig,
    /// Completed ladder points, coarsest first.
    pub samples: Vec<ErrorSample>,
    /// Bit 0: dropped from the L² fit; bit 1: dropped from the energy fit.
    pub discarded: Vec<u8>,
    pub failures: Vec<PointFailure>,
    pub norms: Vec<NormResult>,
    pub reference_key: CacheKey,
    pub reference_source: CacheOutcome,
    /// Indices of samples breaking the halving-monotonicity guard, per norm.
    pub monotonicity: Vec<(NormKind, Vec<usize>)>,
    pub wall_time: Duration,
}

impl ConvergenceReport {
    pub fn norm(&self, which: NormKind) -> &NormResult {
        self.norms
            .iter()
            .find(|r| r.norm == which)
            .expect("both norms are always reported")
    }

    pub fn slope(&self, which: NormKind) -> Option<f64> {
        self.norm(which).slope()
    }

    /// No norm failed. Floors and failed ladder points are not verdict
    /// failures on their own.
    pub fn passed(&self) -> bool {
        self.norms.iter().all(|r| r.verdict != Verdict::Fail)
    }
}

pub fn discard_bit(norm: NormKind) -> u8 {
    match norm {
        NormKind::L2 => 1,
        NormKind::Energy => 2,
    }
}

/// Key of a reference trajectory: every input that changes its bits.
pub fn reference_key(cfg: &StudyConfig, potential: &Potential, spec: ReferenceSpec) -> CacheKey {
    let table: Vec<u8> = potential
        .table()
        .iter()
        .flat_map(|c| c.re.to_bits().to_le_bytes().into_iter().chain(c.im.to_bits().to_le_bytes()))
        .collect();
    let f = CacheKey::float;
    CacheKey::from_fields([
        ("format", FORMAT_VERSION.to_string()),
        ("a", f(cfg.a)),
        ("b", f(cfg.b)),
        ("alpha", f(cfg.alpha.value())),
        ("beta", f(cfg.nonlinearity.beta())),
        ("sigma", f(cfg.nonlinearity.sigma())),
        ("potential", cfg.potential.to_string()),
        ("seed", cfg.potential.seed().map_or("-".into(), |s| s.to_string())),
        ("potential_modes", potential.table_modes().to_string()),
        ("potential_table", format!("{:016x}", fnv1a64(&table))),
        ("initial", cfg.initial.label().to_string()),
        ("t_final", f(cfg.t_final)),
        ("integrator", spec.integrator.label().to_string()),
        ("tau", f(spec.tau)),
        ("n", spec.n.to_string()),
        ("k_factor", cfg.quad.k_factor().to_string()),
    ])
}

fn simulate(cfg: &StudyConfig, potential: &Arc<Potential>, spec: ReferenceSpec) -> Result<WaveField> {
    let grid = SpectralGrid::new(cfg.a, cfg.b, spec.n)?;
    let initial = make_initial(cfg.initial, cfg.alpha, grid);
    let solver = cfg.solver_config(Arc::clone(potential), spec.tau, spec.integrator)?;
    evolve_final(&initial, &solver)
}

fn cached(
    cache: Option<&ReferenceCache>,
    cfg: &StudyConfig,
    potential: &Arc<Potential>,
    spec: ReferenceSpec,
) -> Result<(WaveField, CacheOutcome)> {
    let key = reference_key(cfg, potential, spec);
    match cache {
        Some(c) => c.get_or_compute(key, cfg.alpha.value(), || simulate(cfg, potential, spec)),
        None => Ok((simulate(cfg, potential, spec)?, CacheOutcome::Miss)),
    }
}

/// Runs the reference (cached when `cfg.cache_dir` is set), every ladder
/// point, and the order fits.
pub fn run_convergence_study(cfg: &StudyConfig) -> Result<ConvergenceReport> {
    let started = Instant::now();
    cfg.validate()?;
    let potential = cfg.build_potential()?;
    let cache = cfg.cache_dir.as_ref().map(ReferenceCache::new).transpose()?;
    let spec = cfg.reference;
    let coarse = match cfg.mode() {
        StudyMode::ConvergeSpace => ReferenceSpec { n: spec.n / 2, ..spec },
        _ => ReferenceSpec { tau: 2.0 * spec.tau, ..spec },
    };

    let (fine, rough) = rayon::join(
        || cached(cache.as_ref(), cfg, &potential, spec),
        || {
            cfg.estimate_reference_error
                .then(|| cached(cache.as_ref(), cfg, &potential, coarse))
                .transpose()
        },
    );
    let (reference, reference_source) = fine?;
    let rough = rough?;

    let points: Vec<(f64, ReferenceSpec)> = match &cfg.ladder {
        Ladder::Time(taus) => taus
            .iter()
            .map(|&tau| (tau, ReferenceSpec { integrator: cfg.integrator, tau, n: spec.n }))
            .collect(),
        Ladder::Space(ns) => ns
            .iter()
            .map(|&n| {
                let h = (cfg.b - cfg.a) / n as f64;
                (h, ReferenceSpec { integrator: cfg.integrator, tau: spec.tau, n })
            })
            .collect(),
    };
    let outcomes: Vec<(f64, Result<(f64, f64)>)> = points
        .par_iter()
        .map(|&(refinement, point)| {
            let run = simulate(cfg, &potential, point)
                .and_then(|u| error_pair(&u, &reference, cfg.alpha));
            (refinement, run)
        })
        .collect();

    let mut samples = Vec::new();
    let mut failures = Vec::new();
    for (refinement, run) in outcomes {
        match run {
            Ok((e_l2, e_h_alpha_half)) => samples.push(ErrorSample {
                refinement,
                e_l2,
                e_h_alpha_half,
                t: cfg.t_final,
            }),
            Err(e @ Error::BlowUp { .. }) => failures.push(PointFailure {
                refinement,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    samples.sort_by(|x, y| y.refinement.total_cmp(&x.refinement));

    let reference_diff = rough
        .map(|(r, _)| error_pair(&r, &reference, cfg.alpha))
        .transpose()?;
    let mut discarded = vec![0u8; samples.len()];
    let mut norms = Vec::new();
    for norm in NormKind::BOTH {
        let expected = match cfg.mode() {
            StudyMode::ConvergeSpace => cfg.expected.spatial(norm),
            _ => cfg.expected.temporal(norm),
        };
        let reference_error = reference_diff.map(|(l2, en)| {
            let diff = match norm {
                NormKind::L2 => l2,
                NormKind::Energy => en,
            };
            // the coarse reference is one halving away; its error dominates
            let p = match cfg.mode() {
                StudyMode::ConvergeSpace => expected,
                _ => expected.min(spec.integrator.nominal_order()),
            };
            diff / (2f64.powf(p.max(0.1)) - 1.0)
        });
        let opts = match reference_error {
            Some(r) => FitOptions::default().with_reference_error(r),
            None => FitOptions::default(),
        };
        for (flag, s) in discarded.iter_mut().zip(&samples) {
            if !opts.keeps(s.error(norm)) {
                *flag |= discard_bit(norm);
            }
        }
        let (fit, verdict) = match fit_order_with(&samples, norm, &opts) {
            Ok(fit) => {
                let ok = (fit.slope - expected).abs() <= cfg.tolerance;
                (Some(fit), if ok { Verdict::Pass } else { Verdict::Fail })
            }
            Err(Error::InsufficientPoints { .. }) => (None, Verdict::Floor),
            Err(e) => return Err(e),
        };
        norms.push(NormResult {
            norm,
            fit,
            expected,
            reference_error,
            verdict,
        });
    }
    let monotonicity = NormKind::BOTH
        .iter()
        .map(|&n| (n, monotonicity_violations(&samples, n)))
        .collect();

    Ok(ConvergenceReport {
        config: cfg.clone(),
        samples,
        discarded,
        failures,
        norms,
        reference_key: reference_key(cfg, &potential, spec),
        reference_source,
        monotonicity,
        wall_time: started.elapsed(),
    })
}
