//! Spatial study under the random potential: the ladder shares the
//! reference step, so the error is the spatial part alone.

use sfnls::harness::{run_convergence_study, PotentialSpec, StudyConfig};
use sfnls::verification::NormKind;
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let alpha = FracOrder::new(1.5)?;
    let mut cfg = StudyConfig::spatial(
        alpha,
        NonlinearityParams::new(-1.0, 1.0)?,
        PotentialSpec::random_decay(1),
        InitialKind::Gaussian,
        vec![32, 64, 128],
    );
    cfg.t_final = 0.25;
    cfg.reference.tau = 1e-4;
    cfg.reference.n = 1024;
    let report = run_convergence_study(&cfg)?;
    for s in &report.samples {
        println!("h {:<8} L2 {:.3e}  H^a/2 {:.3e}", s.refinement, s.e_l2, s.e_h_alpha_half);
    }
    for norm in NormKind::BOTH {
        let r = report.norm(norm);
        // `floor`: too few points above the reference's own error
        let slope = r.slope().map_or("-".into(), |s| format!("{s:.3}"));
        println!("{norm}: slope {slope} expected {} -> {}", r.expected, r.verdict);
    }
    Ok(())
}
