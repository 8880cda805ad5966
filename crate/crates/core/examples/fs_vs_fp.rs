//! Spectral against pseudospectral right-hand sides for the square well:
//! the FP product aliases the discontinuous potential, the FS one does not.

use sfnls::verification::convolution_potential;
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let alpha = FracOrder::new(2.0)?;
    let linear = NonlinearityParams::linear();
    println!("{:>6} {:>12} {:>12}", "N", "FS error", "FP error");
    for n in [32, 64, 128, 256, 512] {
        let grid = SpectralGrid::new(-16.0, 16.0, n)?;
        let v = Potential::square_well(-16.0, 16.0, 2 * n)?;
        let psi = make_initial(InitialKind::Gaussian, alpha, grid);
        let exact = convolution_potential(&v, &psi);
        let fs = b_apply_fs(&v, &psi, &linear, QuadratureConfig::default())?;
        let fp = b_apply_fp(&v, &psi, &linear)?;
        let err = |x: &[num_complex::Complex64]| {
            x.iter().zip(&exact).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
        };
        println!("{n:>6} {:>12.3e} {:>12.3e}", err(&fs), err(&fp));
    }
    Ok(())
}
