//! A small temporal study: EWI-FS under the square well against a finer
//! EWI-FS reference on the same grid. On a coarse grid a Strang-FP
//! reference would differ from the FS solution by its own sampling error
//! of the well, which floors the ladder.

use sfnls::harness::{run_convergence_study, PotentialSpec, StudyConfig};
use sfnls::verification::{ExpectedOrders, NormKind};
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let alpha = FracOrder::new(1.5)?;
    let mut cfg = StudyConfig::temporal(
        alpha,
        NonlinearityParams::new(-1.0, 1.0)?,
        PotentialSpec::SquareWell,
        InitialKind::Gaussian,
        256,
        vec![2e-2, 1e-2, 5e-3, 2.5e-3],
    );
    cfg.t_final = 0.5;
    cfg.reference.integrator = IntegratorKind::EwiFs;
    // the well is bounded, so both norms converge at first order
    cfg.expected = ExpectedOrders::new(1.5, 1.5, 1.0);
    let report = run_convergence_study(&cfg)?;
    for s in &report.samples {
        println!("tau {:<8} L2 {:.3e}  H^a/2 {:.3e}", s.refinement, s.e_l2, s.e_h_alpha_half);
    }
    for norm in NormKind::BOTH {
        let r = report.norm(norm);
        let slope = r.slope().map_or("-".into(), |s| format!("{s:.3}"));
        println!("{norm}: slope {slope} expected {} -> {}", r.expected, r.verdict);
    }
    Ok(())
}
