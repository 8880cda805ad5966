//! |ψ(x, t)| under the square-well potential, written as `t,x,abs_psi`
//! rows for an external surface plot.
//!
//! cargo run --release --example square_well_dynamics -- [alpha] [out.csv]

use std::fs::File;
use std::sync::Arc;

use sfnls::harness::write_snapshots_csv;
use sfnls::*;

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(1.2), |s| s.parse())?;
    let path = args.next().unwrap_or_else(|| "square_well_snapshots.csv".into());

    let grid = SpectralGrid::new(-16.0, 16.0, 512)?;
    let alpha = FracOrder::new(alpha)?;
    let v = Arc::new(Potential::square_well(-16.0, 16.0, 1024)?);
    let cfg = SolverConfig::new(alpha, NonlinearityParams::new(-1.0, 1.0)?, v, 1e-3, 1.0, IntegratorKind::EwiFs)?;
    let psi0 = make_initial(InitialKind::Gaussian, alpha, grid);
    let traj = evolve(&psi0, &cfg, 100)?;

    write_snapshots_csv(File::create(&path)?, &traj)?;
    for s in &traj.snapshots {
        let peak = s.samples().iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!("t = {:.2}  max|ψ| = {peak:.4}  ‖ψ‖ = {:.6}", s.time(), s.l2_norm());
    }
    println!("wrote {path}");
    Ok(())
}
