//! σ = 0.1 with the H^α initial datum and no potential: the nonlinearity
//! is only C¹, yet the L² temporal order stays one.

use sfnls::harness::{run_convergence_study, PotentialSpec, StudyConfig};
use sfnls::verification::NormKind;
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let alpha = FracOrder::new(2.0)?;
    let mut cfg = StudyConfig::temporal(
        alpha,
        NonlinearityParams::new(-1.0, 0.1)?,
        PotentialSpec::None,
        InitialKind::HAlpha,
        256,
        vec![2e-2, 1e-2, 5e-3, 2.5e-3],
    );
    cfg.t_final = 0.5;
    let report = run_convergence_study(&cfg)?;
    for norm in NormKind::BOTH {
        println!("{norm}: slope {:.3}", report.slope(norm).unwrap_or(f64::NAN));
    }
    Ok(())
}
