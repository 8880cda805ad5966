//! Time stepping: the exponential wave integrator with Fourier spectral
//! (EWI-FS) or pseudospectral (EWI-FP) right-hand side, and a Strang
//! splitting used to manufacture reference solutions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{free_propagate, phi1_apply, phi1_neg_i, FracOrder, WaveField};
use crate::grid::SpectralGrid;
use crate::physics::rhs::{FpRhs, FsRhs};
use crate::physics::{b_apply_fs, NonlinearityParams, Potential, QuadratureConfig};
use crate::transform::FftPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegratorKind {
    EwiFs,
    EwiFp,
    StrangFp,
}

impl IntegratorKind {
    pub fn label(&self) -> &'static str {
        match self {
            IntegratorKind::EwiFs => "ewi-fs",
            IntegratorKind::EwiFp => "ewi-fp",
            IntegratorKind::StrangFp => "strang-fp",
        }
    }

    /// Nominal temporal order on smooth problems.
    pub fn nominal_order(&self) -> f64 {
        match self {
            IntegratorKind::EwiFs | IntegratorKind::EwiFp => 1.0,
            IntegratorKind::StrangFp => 2.0,
        }
    }
}

impl fmt::Display for IntegratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IntegratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ewi-fs" => Ok(IntegratorKind::EwiFs),
            "ewi-fp" => Ok(IntegratorKind::EwiFp),
            "strang-fp" => Ok(IntegratorKind::StrangFp),
            other => Err(Error::InvalidParameter(format!("unknown integrator '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub alpha: FracOrder,
    pub nonlinearity: NonlinearityParams,
    pub potential: Arc<Potential>,
    pub tau: f64,
    pub t_final: f64,
    pub integrator: IntegratorKind,
    pub quad: QuadratureConfig,
}

impl SolverConfig {
    pub fn new(
        alpha: FracOrder,
        nonlinearity: NonlinearityParams,
        potential: Arc<Potential>,
        tau: f64,
        t_final: f64,
        integrator: IntegratorKind,
    ) -> Result<Self> {
        let cfg = Self {
            alpha,
            nonlinearity,
            potential,
            tau,
            t_final,
            integrator,
            quad: QuadratureConfig::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_quadrature(mut self, quad: QuadratureConfig) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_integrator(mut self, integrator: IntegratorKind) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidParameter(format!("tau must be > 0, got {}", self.tau)));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "t_final must be > 0, got {}",
                self.t_final
            )));
        }
        Ok(())
    }

    /// Splits `[t0, t_final]` into whole steps of `tau`, plus a shorter last
    /// step when the span is not a whole multiple.
    pub fn step_plan(&self, t0: f64) -> Result<StepPlan> {
        let span = self.t_final - t0;
        if span < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "initial time {t0} is past t_final {}",
                self.t_final
            )));
        }
        let ratio = span / self.tau;
        let nearest = ratio.round();
        if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
            return Ok(StepPlan {
                full_steps: nearest as usize,
                last_step: None,
            });
        }
        let full = ratio.floor();
        Ok(StepPlan {
            full_steps: full as usize,
            last_step: Some(span - full * self.tau),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPlan {
    pub full_steps: usize,
    /// Length of the trailing short step, if any.
    pub last_step: Option<f64>,
}

impl StepPlan {
    pub fn total_steps(&self) -> usize {
        self.full_steps + usize::from(self.last_step.is_some())
    }
}

enum Rhs {
    Fs(FsRhs),
    Fp(FpRhs),
    Strang { v_grid: Vec<f64>, fft: FftPair },
}

/// A single-step map with every multiplier and plan precomputed for a fixed
/// grid and step size. Steps act in place on coefficient arrays.
pub struct Stepper {
    kind: IntegratorKind,
    tau: f64,
    nonlinearity: NonlinearityParams,
    propagator: Vec<Complex64>,
    /// `-iτ φ₁(-iτ|μ_l|^α)`
    duhamel: Vec<Complex64>,
    rhs: Rhs,
    scratch: Vec<Complex64>,
}

impl Stepper {
    pub fn new(cfg: &SolverConfig, grid: SpectralGrid, tau: f64) -> Result<Self> {
        cfg.potential.check_domain(&grid)?;
        let symbols: Vec<f64> = grid
            .wavenumbers()
            .iter()
            .map(|&mu| cfg.alpha.symbol(mu))
            .collect();
        let propagator = symbols
            .iter()
            .map(|&s| Complex64::from_polar(1.0, -tau * s))
            .collect();
        let duhamel = symbols
            .iter()
            .map(|&s| Complex64::new(0.0, -tau) * phi1_neg_i(tau * s))
            .collect();
        let rhs = match cfg.integrator {
            IntegratorKind::EwiFs => Rhs::Fs(FsRhs::new(&cfg.potential, &cfg.nonlinearity, grid.n(), cfg.quad)?),
            IntegratorKind::EwiFp => Rhs::Fp(FpRhs::new(&cfg.potential, &cfg.nonlinearity, &grid)?),
            IntegratorKind::StrangFp => Rhs::Strang {
                v_grid: cfg.potential.sample(&grid)?,
                fft: FftPair::new(grid.n()),
            },
        };
        Ok(Self {
            kind: cfg.integrator,
            tau,
            nonlinearity: cfg.nonlinearity,
            propagator,
            duhamel,
            rhs,
            scratch: vec![Complex64::new(0.0, 0.0); grid.n()],
        })
    }

    pub fn kind(&self) -> IntegratorKind {
        self.kind
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn step(&mut self, coeffs: &mut [Complex64]) {
        match &mut self.rhs {
            Rhs::Fs(rhs) => {
                rhs.apply(coeffs, &mut self.scratch);
                ewi_update(coeffs, &self.scratch, &self.propagator, &self.duhamel);
            }
            Rhs::Fp(rhs) => {
                rhs.apply(coeffs, &mut self.scratch);
                ewi_update(coeffs, &self.scratch, &self.propagator, &self.duhamel);
            }
            Rhs::Strang { v_grid, fft } => {
                let half = 0.5 * self.tau;
                let params = self.nonlinearity;
                let phase_flow = |buf: &mut [Complex64]| {
                    for (z, &v) in buf.iter_mut().zip(v_grid.iter()) {
                        let rate = v + params.density_unchecked(z.norm_sqr());
                        *z *= Complex64::from_polar(1.0, -half * rate);
                    }
                };
                fft.inverse(coeffs);
                phase_flow(coeffs);
                fft.forward(coeffs);
                coeffs
                    .iter_mut()
                    .zip(&self.propagator)
                    .for_each(|(c, p)| *c *= p);
                fft.inverse(coeffs);
                phase_flow(coeffs);
                fft.forward(coeffs);
            }
        }
    }
}

fn ewi_update(
    coeffs: &mut [Complex64],
    rhs: &[Complex64],
    propagator: &[Complex64],
    duhamel: &[Complex64],
) {
    for (((c, b), p), d) in coeffs.iter_mut().zip(rhs).zip(propagator).zip(duhamel) {
        *c = p * *c + d * b;
    }
}

fn single_step(state: &WaveField, cfg: &SolverConfig, kind: IntegratorKind) -> Result<WaveField> {
    let cfg = cfg.clone().with_integrator(kind);
    let mut stepper = Stepper::new(&cfg, *state.grid(), cfg.tau)?;
    let mut coeffs = state.coeffs().to_vec();
    stepper.step(&mut coeffs);
    WaveField::from_coeffs(*state.grid(), coeffs, state.time() + cfg.tau)
        .map_err(|_| Error::BlowUp { step: 1, time: state.time() + cfg.tau })
}

/// One EWI-FS step from the coefficient recursion.
pub fn ewi_fs_step(state: &WaveField, cfg: &SolverConfig) -> Result<WaveField> {
    single_step(state, cfg, IntegratorKind::EwiFs)
}

/// One EWI step with the pseudospectral right-hand side.
pub fn ewi_fp_step(state: &WaveField, cfg: &SolverConfig) -> Result<WaveField> {
    single_step(state, cfg, IntegratorKind::EwiFp)
}

/// One Strang splitting step: half phase flow, free flow, half phase flow,
/// with the potential and density sampled at the grid points.
pub fn strang_fp_step(state: &WaveField, cfg: &SolverConfig) -> Result<WaveField> {
    single_step(state, cfg, IntegratorKind::StrangFp)
}

/// One EWI-FS step assembled from the field-level operators,
/// `e^{iτ⟨∇⟩_α}ψ - iτ φ₁(iτ⟨∇⟩_α) P_N(Vψ + G(ψ))`.
pub fn ewi_fs_step_operator_form(state: &WaveField, cfg: &SolverConfig) -> Result<WaveField> {
    let b = b_apply_fs(&cfg.potential, state, &cfg.nonlinearity, cfg.quad)?;
    let b = WaveField::from_coeffs(*state.grid(), b, state.time())?;
    let duhamel = phi1_apply(&b, cfg.tau, cfg.alpha).scale(Complex64::new(0.0, -cfg.tau));
    let linear = free_propagate(state, cfg.tau, cfg.alpha);
    Ok(linear.add(&duhamel)?.with_time(state.time() + cfg.tau))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Snapshots in increasing time; each field carries its own time.
    pub snapshots: Vec<WaveField>,
    pub stride: usize,
    pub plan: StepPlan,
}

impl Trajectory {
    pub fn final_state(&self) -> &WaveField {
        self.snapshots.last().expect("trajectory holds the initial snapshot")
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(WaveField::time).collect()
    }
}

/// Steps `initial` to `cfg.t_final`, keeping every `stride`-th state (0 keeps
/// only the endpoints).
pub fn evolve(initial: &WaveField, cfg: &SolverConfig, stride: usize) -> Result<Trajectory> {
    cfg.validate()?;
    let plan = cfg.step_plan(initial.time())?;
    let grid = *initial.grid();
    let mut stepper = Stepper::new(cfg, grid, cfg.tau)?;
    let mut coeffs = initial.coeffs().to_vec();
    let mut snapshots = vec![initial.clone()];
    let t0 = initial.time();
    let total = plan.total_steps();

    for step in 1..=plan.full_steps {
        stepper.step(&mut coeffs);
        let t = t0 + step as f64 * cfg.tau;
        check_finite(&coeffs, step, t)?;
        if (stride > 0 && step % stride == 0) || step == total {
            snapshots.push(WaveField::from_parts_unchecked(grid, coeffs.clone(), t));
        }
    }
    if let Some(last) = plan.last_step {
        let mut short = Stepper::new(cfg, grid, last)?;
        short.step(&mut coeffs);
        check_finite(&coeffs, total, cfg.t_final)?;
        snapshots.push(WaveField::from_parts_unchecked(grid, coeffs, cfg.t_final));
    } else if let Some(last) = snapshots.last_mut() {
        // land exactly on t_final rather than t0 + n·τ
        if total > 0 {
            last.clone_from(&last.clone().with_time(cfg.t_final));
        }
    }
    Ok(Trajectory {
        snapshots,
        stride,
        plan,
    })
}

/// The state at `cfg.t_final` without intermediate snapshots.
pub fn evolve_final(initial: &WaveField, cfg: &SolverConfig) -> Result<WaveField> {
    let mut traj = evolve(initial, cfg, 0)?;
    Ok(traj.snapshots.pop().expect("non-empty trajectory"))
}

fn check_finite(coeffs: &[Complex64], step: usize, time: f64) -> Result<()> {
    if coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::BlowUp { step, time })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::{make_initial, InitialKind};
    use crate::testutil::{random_field, rng};

    fn grid(n: usize) -> SpectralGrid {
        SpectralGrid::new(-16.0, 16.0, n).unwrap()
    }

    fn config(v: Potential, beta: f64, sigma: f64, alpha: f64, tau: f64, t: f64) -> SolverConfig {
        SolverConfig::new(
            FracOrder::new(alpha).unwrap(),
            NonlinearityParams::new(beta, sigma).unwrap(),
            Arc::new(v),
            tau,
            t,
            IntegratorKind::EwiFs,
        )
        .unwrap()
    }

    #[test]
    fn step_plans() {
        let cfg = config(Potential::none(-16.0, 16.0), 0.0, 1.0, 1.5, 1e-3, 1.0);
        assert_eq!(cfg.step_plan(0.0).unwrap(), StepPlan { full_steps: 1000, last_step: None });
        let cfg = cfg.with_tau(0.3);
        let plan = cfg.step_plan(0.0).unwrap();
        assert_eq!(plan.full_steps, 3);
        assert!((plan.last_step.unwrap() - 0.1).abs() < 1e-12);
        assert!(cfg.step_plan(2.0).is_err());
    }

    #[test]
    fn linear_flow_is_exact_for_every_scheme() {
        let g = grid(64);
        let mut r = rng(1);
        let f = random_field(&mut r, g);
        for kind in [IntegratorKind::EwiFs, IntegratorKind::EwiFp, IntegratorKind::StrangFp] {
            let cfg = config(Potential::none(-16.0, 16.0), 0.0, 1.0, 1.3, 0.05, 1.0).with_integrator(kind);
            let out = evolve_final(&f, &cfg).unwrap();
            let exact = free_propagate(&f, 1.0, cfg.alpha);
            assert!(out.sub(&exact).unwrap().l2_norm() < 1e-12 * f.l2_norm(), "{kind}");
        }
    }

    #[test]
    fn constant_potential_strang_is_exact() {
        let g = grid(32);
        let mut table = vec![Complex64::new(0.0, 0.0); 64];
        table[0] = Complex64::new(0.7, 0.0);
        let v = Potential::custom(-16.0, 16.0, table).unwrap();
        let cfg = config(v, 0.0, 1.0, 1.5, 0.1, 1.0).with_integrator(IntegratorKind::StrangFp);
        let mut r = rng(2);
        let f = random_field(&mut r, g);
        let out = strang_fp_step(&f, &cfg).unwrap();
        let exact = free_propagate(&f, 0.1, cfg.alpha).scale(Complex64::from_polar(1.0, -0.07));
        assert!(out.sub(&exact).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn fs_and_fp_coincide_without_rhs() {
        let g = grid(32);
        let mut r = rng(4);
        let f = random_field(&mut r, g);
        let cfg = config(Potential::none(-16.0, 16.0), 0.0, 1.0, 1.8, 0.01, 1.0);
        assert_eq!(ewi_fs_step(&f, &cfg).unwrap(), ewi_fp_step(&f, &cfg).unwrap());
    }

    #[test]
    fn recursion_matches_operator_form() {
        let g = grid(64);
        let mut r = rng(5);
        for v in [
            Potential::square_well(-16.0, 16.0, 128).unwrap(),
            Potential::random_decay(-16.0, 16.0, 3, 1 << 18, 128).unwrap(),
        ] {
            let cfg = config(v, -1.0, 0.4, 1.5, 0.02, 1.0);
            let f = random_field(&mut r, g);
            let a = ewi_fs_step(&f, &cfg).unwrap();
            let b = ewi_fs_step_operator_form(&f, &cfg).unwrap();
            assert!(a.sub(&b).unwrap().l2_norm() <= 1e-13 * a.l2_norm());
            assert_eq!(a.time(), b.time());
        }
    }

    #[test]
    fn snapshots_follow_stride() {
        let g = grid(32);
        let f = make_initial(InitialKind::Gaussian, FracOrder::new(1.5).unwrap(), g);
        let cfg = config(Potential::square_well(-16.0, 16.0, 64).unwrap(), -1.0, 1.0, 1.5, 0.1, 1.0);
        let traj = evolve(&f, &cfg, 3).unwrap();
        let times = traj.times();
        assert_eq!(times.len(), 5); // 0, 0.3, 0.6, 0.9, 1.0
        assert!(times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*times.last().unwrap(), 1.0);

        let ends = evolve(&f, &cfg, 10).unwrap();
        assert_eq!(ends.snapshots.len(), 2);

        let done = f.clone().with_time(1.0);
        let none = evolve(&done, &cfg, 1).unwrap();
        assert_eq!(none.snapshots.len(), 1);
        assert_eq!(none.plan.total_steps(), 0);
    }

    #[test]
    fn short_last_step_lands_on_t_final() {
        let g = grid(32);
        let f = make_initial(InitialKind::Gaussian, FracOrder::new(2.0).unwrap(), g);
        let cfg = config(Potential::none(-16.0, 16.0), 0.0, 1.0, 2.0, 0.3, 1.0);
        let traj = evolve(&f, &cfg, 1).unwrap();
        assert!(traj.plan.last_step.is_some());
        assert_eq!(traj.final_state().time(), 1.0);
        let exact = free_propagate(&f, 1.0, cfg.alpha);
        assert!(traj.final_state().sub(&exact).unwrap().l2_norm() < 1e-13);
    }

    #[test]
    fn blow_up_is_reported() {
        // a huge focusing coefficient overflows within a few steps
        let g = grid(16);
        let f = make_initial(InitialKind::Gaussian, FracOrder::new(2.0).unwrap(), g).scale(Complex64::new(1e3, 0.0));
        let cfg = config(Potential::none(-16.0, 16.0), -1e200, 3.0, 2.0, 0.5, 10.0);
        match evolve(&f, &cfg, 0) {
            Err(Error::BlowUp { step, .. }) => assert!(step >= 1),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn steps_run_without_cfl_restriction() {
        // τ |μ_max|^α ≫ 1 on every grid; growth must not depend on N
        let mut ratios = Vec::new();
        for n in [256usize, 2048] {
            let g = grid(n);
            let f = make_initial(InitialKind::Gaussian, FracOrder::new(2.0).unwrap(), g);
            let cfg = config(Potential::square_well(-16.0, 16.0, 2 * n).unwrap(), -1.0, 1.0, 2.0, 0.01, 1.0);
            let out = evolve_final(&f, &cfg).unwrap();
            assert!(out.is_finite());
            ratios.push(out.l2_norm() / f.l2_norm());
        }
        assert!(ratios.iter().all(|&r| r < 1.25), "{ratios:?}");
        assert!((ratios[0] - ratios[1]).abs() < 0.02, "{ratios:?}");
    }
}
