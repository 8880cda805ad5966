//! Generates a random potential table, stores it in the binary field
//! format and reads it back as a custom potential.

use sfnls::harness::{read_field, write_field, FieldRecord, PotentialSpec};
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let dir = std::env::temp_dir().join("sfnls-potential-gen");
    let path = dir.join("v2.sfnl");
    let v = PotentialSpec::random_decay(42).build(-16.0, 16.0, 1024)?;
    write_field(
        &path,
        &FieldRecord {
            a: -16.0,
            b: 16.0,
            alpha: 0.0,
            t: 0.0,
            coeffs: v.table().to_vec(),
        },
    )?;
    let back = Potential::custom(-16.0, 16.0, read_field(&path)?.coeffs)?;
    assert_eq!(back.table(), v.table());

    let grid = SpectralGrid::new(-16.0, 16.0, 256)?;
    let samples = v.sample(&grid)?;
    let (lo, hi) = samples.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    println!("{} modes written to {}", v.table_modes(), path.display());
    println!("v_0 = {}, V on 256 points in [{lo:.3}, {hi:.3}]", v.coeff(0));
    println!("file potential: {}", PotentialSpec::File(path));
    Ok(())
}
