//! Command-line front end. Exit codes: 0 success, 1 a verdict or oracle
//! failed, 2 invalid input, 3 blow-up.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::field::FracOrder;
use crate::grid::SpectralGrid;
use crate::harness::cache::{write_field, FieldRecord};
use crate::harness::config::{
    Ladder, PotentialSpec, StudyConfig, DEFAULT_REF_N, DEFAULT_REF_TAU, DEFAULT_SPATIAL_TOLERANCE,
    DEFAULT_TEMPORAL_TOLERANCE,
};
use crate::harness::report::{create, emit_report, write_meta, write_snapshots_csv};
use crate::harness::study::{run_convergence_study, ConvergenceReport};
use crate::harness::suite::OracleSuite;
use crate::integrators::{evolve, IntegratorKind, SolverConfig};
use crate::physics::{make_initial, InitialKind, NonlinearityParams, QuadratureConfig};
use crate::verification::ExpectedOrders;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BLOWUP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sfnls", version, about = "Space-fractional NLS solver and convergence harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve one initial datum and export |ψ| snapshots.
    Simulate(SimulateArgs),
    /// Temporal convergence study on a fixed grid.
    ConvergeTime(TimeArgs),
    /// Spatial convergence study at a fixed step.
    ConvergeSpace(SpaceArgs),
    /// Run the inequality and exactness oracles.
    Verify(VerifyArgs),
    /// Write a potential's Fourier table in the binary field format.
    PotentialGen(PotentialArgs),
}

#[derive(Debug, Args)]
struct Physics {
    #[arg(long, default_value_t = 1.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    beta: f64,
    /// none | square-well | random-decay | file:PATH
    #[arg(long, default_value = "square-well")]
    potential: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// gaussian | odd-gaussian | h-alpha
    #[arg(long, default_value = "gaussian")]
    initial: String,
    #[arg(long, default_value_t = 1.0)]
    t_final: f64,
    #[arg(long, default_value_t = 3)]
    k_factor: usize,
}

struct Parsed {
    alpha: FracOrder,
    nonlinearity: NonlinearityParams,
    potential: PotentialSpec,
    initial: InitialKind,
    quad: QuadratureConfig,
}

impl Physics {
    fn parse(&self) -> Result<Parsed> {
        Ok(Parsed {
            alpha: FracOrder::new(self.alpha)?,
            nonlinearity: NonlinearityParams::new(self.beta, self.sigma)?,
            potential: self.potential.parse::<PotentialSpec>()?.with_seed(self.seed),
            initial: self.initial.parse()?,
            quad: QuadratureConfig::new(self.k_factor)?,
        })
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    physics: Physics,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 1e-3)]
    tau: f64,
    #[arg(long, default_value = "ewi-fs")]
    integrator: String,
    /// Keep every STRIDE-th step (0: endpoints only).
    #[arg(long, default_value_t = 0, value_name = "STRIDE")]
    snapshots: usize,
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct StudyArgs {
    #[command(flatten)]
    physics: Physics,
    /// Comma-separated refinements.
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<String>>,
    #[arg(long, default_value = "ewi-fs")]
    integrator: String,
    #[arg(long)]
    integrator_ref: Option<String>,
    #[arg(long)]
    ref_tau: Option<f64>,
    #[arg(long)]
    ref_n: Option<usize>,
    /// Regularity exponent m of the solution (default α).
    #[arg(long)]
    regularity: Option<f64>,
    /// Expected temporal order in the energy norm.
    #[arg(long, default_value_t = 0.5)]
    energy_order: f64,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Reference cache directory (default OUT/cache).
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Skip the coarsened reference used to estimate the reference error.
    #[arg(long)]
    no_ref_estimate: bool,
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TimeArgs {
    #[command(flatten)]
    study: StudyArgs,
    /// Grid size shared by the ladder and the reference.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[command(flatten)]
    study: StudyArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random fields per order in the φ₁ check.
    #[arg(long, default_value_t = 1000)]
    fields: usize,
    /// Random pairs per exponent in the pointwise checks.
    #[arg(long, default_value_t = 10_000)]
    pairs: usize,
    #[arg(long, default_value_t = 100)]
    identity_trials: usize,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PotentialArgs {
    /// square-well | random-decay | none
    #[arg(long, default_value = "random-decay")]
    potential: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of tabulated modes.
    #[arg(long, default_value_t = 8192)]
    n: usize,
    #[arg(long, default_value_t = -16.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 16.0)]
    b: f64,
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

/// Parses `argv` (program name first) and runs the command.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let run = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::ConvergeTime(a) => converge_time(a),
        Command::ConvergeSpace(a) => converge_space(a),
        Command::Verify(a) => verify(a),
        Command::PotentialGen(a) => potential_gen(a),
    };
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BlowUp { .. } => EXIT_BLOWUP,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn simulate(args: SimulateArgs) -> Result<i32> {
    let p = args.physics.parse()?;
    let grid = SpectralGrid::new(-16.0, 16.0, args.n)?;
    let potential = Arc::new(p.potential.build(grid.a(), grid.b(), 2 * args.n)?);
    let integrator: IntegratorKind = args.integrator.parse()?;
    let cfg = SolverConfig::new(p.alpha, p.nonlinearity, potential, args.tau, args.physics.t_final, integrator)?
        .with_quadrature(p.quad);
    let initial = make_initial(p.initial, p.alpha, grid);
    let traj = evolve(&initial, &cfg, args.snapshots)?;

    fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let snaps = args.out.join("snapshots.csv");
    write_snapshots_csv(create(&snaps)?, &traj)?;
    let last = traj.final_state();
    write_field(&args.out.join("final.sfnl"), &FieldRecord::from_field(last, p.alpha.value()))?;
    let meta = vec![
        ("mode".to_string(), "simulate".to_string()),
        ("alpha".into(), p.alpha.value().to_string()),
        ("beta".into(), p.nonlinearity.beta().to_string()),
        ("sigma".into(), p.nonlinearity.sigma().to_string()),
        ("potential".into(), p.potential.to_string()),
        ("seed".into(), p.potential.seed().map_or("none".into(), |s| s.to_string())),
        ("initial".into(), p.initial.label().into()),
        ("n".into(), args.n.to_string()),
        ("tau".into(), args.tau.to_string()),
        ("t_final".into(), args.physics.t_final.to_string()),
        ("integrator".into(), integrator.label().into()),
        ("k_factor".into(), p.quad.k_factor().to_string()),
        ("steps".into(), traj.plan.total_steps().to_string()),
        ("last_step".into(), traj.plan.last_step.map_or("none".into(), |s| s.to_string())),
        ("snapshot_stride".into(), args.snapshots.to_string()),
        ("snapshots".into(), traj.snapshots.len().to_string()),
        ("mass_initial".into(), initial.l2_norm().to_string()),
        ("mass_final".into(), last.l2_norm().to_string()),
    ];
    write_meta(create(&args.out.join("meta.txt"))?, &meta)?;
    println!(
        "{} snapshots to {}; L2 norm {:.6} -> {:.6}",
        traj.snapshots.len(),
        snaps.display(),
        initial.l2_norm(),
        last.l2_norm()
    );
    Ok(EXIT_OK)
}

fn parse_list<T: std::str::FromStr>(items: &[String]) -> Result<Vec<T>> {
    items
        .iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad ladder entry '{s}'")))
        })
        .collect()
}

fn finish_study(base: StudyConfig, s: &StudyArgs, default_tol: f64) -> Result<i32> {
    let mut cfg = base;
    let m = s.regularity.unwrap_or(cfg.alpha.value());
    cfg.expected = ExpectedOrders::new(cfg.alpha.value(), m, s.energy_order);
    cfg.tolerance = s.tolerance.unwrap_or(default_tol);
    cfg.integrator = s.integrator.parse()?;
    cfg.estimate_reference_error = !s.no_ref_estimate;
    cfg.cache_dir = Some(s.cache.clone().unwrap_or_else(|| s.out.join("cache")));
    cfg.output_dir = Some(s.out.clone());
    let report = run_convergence_study(&cfg)?;
    emit_report(&report, &s.out)?;
    print_report(&report);
    Ok(if !report.passed() {
        EXIT_VERDICT
    } else if !report.failures.is_empty() {
        EXIT_BLOWUP
    } else {
        EXIT_OK
    })
}

fn print_report(r: &ConvergenceReport) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "refinement  e_l2  e_h_alpha_half  discarded");
    for (s, f) in r.samples.iter().zip(&r.discarded) {
        let _ = writeln!(out, "{:e}  {:.4e}  {:.4e}  {f}", s.refinement, s.e_l2, s.e_h_alpha_half);
    }
    for f in &r.failures {
        let _ = writeln!(out, "{:e}  failed: {}", f.refinement, f.reason);
    }
    for n in &r.norms {
        let slope = n.slope().map_or("-".into(), |s| format!("{s:.3}"));
        let _ = writeln!(
            out,
            "{}: slope {slope} expected {:.3} -> {}",
            n.norm.label(),
            n.expected,
            n.verdict
        );
    }
}

fn converge_time(args: TimeArgs) -> Result<i32> {
    let s = &args.study;
    let p = s.physics.parse()?;
    let n = match (args.n, s.ref_n) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidParameter(format!(
                "temporal studies run on the reference grid: --n {a} and --ref-n {b} disagree"
            )))
        }
        (a, b) => a.or(b).unwrap_or(1024),
    };
    let taus = match &s.ladder {
        Some(l) => parse_list::<f64>(l)?,
        None => vec![2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3],
    };
    let mut cfg = StudyConfig::temporal(p.alpha, p.nonlinearity, p.potential, p.initial, n, taus);
    cfg.quad = p.quad;
    cfg.t_final = s.physics.t_final;
    if let Some(k) = &s.integrator_ref {
        cfg.reference.integrator = k.parse()?;
    }
    if let Some(t) = s.ref_tau {
        cfg.reference.tau = t;
    }
    finish_study(cfg, s, DEFAULT_TEMPORAL_TOLERANCE)
}

fn converge_space(args: SpaceArgs) -> Result<i32> {
    let s = &args.study;
    let p = s.physics.parse()?;
    let ns = match &s.ladder {
        Some(l) => parse_list::<usize>(l)?,
        None => vec![64, 128, 256, 512],
    };
    let mut cfg = StudyConfig::spatial(p.alpha, p.nonlinearity, p.potential, p.initial, ns);
    cfg.quad = p.quad;
    cfg.t_final = s.physics.t_final;
    if let Some(k) = &s.integrator_ref {
        cfg.reference.integrator = k.parse()?;
    }
    cfg.reference.tau = s.ref_tau.unwrap_or(DEFAULT_REF_TAU);
    cfg.reference.n = s.ref_n.unwrap_or(DEFAULT_REF_N);
    debug_assert!(matches!(cfg.ladder, Ladder::Space(_)));
    finish_study(cfg, s, DEFAULT_SPATIAL_TOLERANCE)
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let suite = OracleSuite {
        fields: args.fields,
        pairs: args.pairs,
        identity_trials: args.identity_trials,
        seed: args.seed,
        ..OracleSuite::default()
    };
    let reports = suite.run();
    let mut ok = true;
    for r in &reports {
        ok &= r.passed();
        println!(
            "{:<14} trials {:>7}  max ratio {:.6e}  failures {}",
            r.name,
            r.trials,
            r.max_ratio,
            r.failures.len()
        );
        for w in &r.failures {
            println!("  {w}");
        }
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut w = csv::Writer::from_writer(create(&dir.join("oracles.csv"))?);
        w.write_record(["name", "trials", "max_ratio", "failures", "verdict"])?;
        for r in &reports {
            w.write_record([
                r.name.clone(),
                r.trials.to_string(),
                r.max_ratio.to_string(),
                r.failures.len().to_string(),
                if r.passed() { "pass" } else { "fail" }.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERDICT })
}

fn potential_gen(args: PotentialArgs) -> Result<i32> {
    let spec = args.potential.parse::<PotentialSpec>()?.with_seed(args.seed);
    let grid = SpectralGrid::new(args.a, args.b, args.n)?;
    let v = spec.build(args.a, args.b, args.n)?;
    let table = v.fourier_table(args.n)?;
    let path = args.out.join("potential.sfnl");
    write_field(
        &path,
        &FieldRecord {
            a: args.a,
            b: args.b,
            alpha: 0.0,
            t: 0.0,
            coeffs: table,
        },
    )?;
    write_potential_samples(&args.out.join("potential_samples.csv"), &grid, &v.sample(&grid)?)?;
    println!("wrote {} ({} modes, {spec})", path.display(), args.n);
    Ok(EXIT_OK)
}

fn write_potential_samples(path: &Path, grid: &SpectralGrid, v: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["x", "v"])?;
    for (x, v) in grid.points().iter().zip(v) {
        w.write_record([x.to_string(), v.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
