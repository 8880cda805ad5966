//! Reference solutions are stored under a hash of every input; a second
//! study reads them instead of recomputing, and a damaged file is redone.

use std::fs;

use sfnls::harness::{run_convergence_study, PotentialSpec, StudyConfig};
use sfnls::*;

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let mut cfg = StudyConfig::temporal(
        FracOrder::new(1.5)?,
        NonlinearityParams::new(-1.0, 1.0)?,
        PotentialSpec::random_decay(3),
        InitialKind::Gaussian,
        128,
        vec![2e-2, 1e-2, 5e-3],
    );
    cfg.t_final = 0.2;
    cfg.cache_dir = Some(dir.path().to_path_buf());

    let first = run_convergence_study(&cfg)?;
    let second = run_convergence_study(&cfg)?;
    println!("first run:  {:?} in {:?}", first.reference_source, first.wall_time);
    println!("second run: {:?} in {:?}", second.reference_source, second.wall_time);
    assert_eq!(first.samples, second.samples);

    let stored = dir.path().join(format!("ref-{}.sfnl", first.reference_key.hex()));
    let mut bytes = fs::read(&stored)?;
    bytes[100] ^= 0xff;
    fs::write(&stored, bytes)?;
    let third = run_convergence_study(&cfg)?;
    println!("after corruption: {:?}", third.reference_source);
    Ok(())
}
