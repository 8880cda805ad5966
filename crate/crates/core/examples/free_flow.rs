//! Linear flow: with V = 0 and β = 0 the EWI-FS step is the exact
//! propagator, so many small steps land on the analytic phase.

use std::sync::Arc;

use num_complex::Complex64;
use sfnls::*;

fn main() -> sfnls::Result<()> {
    let grid = SpectralGrid::new(-16.0, 16.0, 64)?;
    let alpha = FracOrder::new(1.5)?;
    let l = 7;
    let psi0 = WaveField::mode(grid, l, Complex64::new(1.0, 0.0))?;
    let cfg = SolverConfig::new(
        alpha,
        NonlinearityParams::linear(),
        Arc::new(Potential::none(-16.0, 16.0)),
        1e-2,
        10.0,
        IntegratorKind::EwiFs,
    )?;
    let out = evolve_final(&psi0, &cfg)?;
    let exact = Complex64::from_polar(1.0, -10.0 * alpha.symbol(grid.mu(l)));
    println!("mode {l}: computed {:.15}", out.coeff(l));
    println!("mode {l}: exact    {exact:.15}");
    println!("relative error {:.2e}", (out.coeff(l) - exact).norm());
    Ok(())
}
