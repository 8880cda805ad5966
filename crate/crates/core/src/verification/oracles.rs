use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{phi1_apply, FracOrder, SobolevIndex, WaveField};
use crate::grid::SpectralGrid;
use crate::physics::{g_coeffs_fswq, potential_apply_efp, NonlinearityParams, Potential, QuadratureConfig};
use crate::transform::{pad_to, truncate_into, FftPair};

/// Outcome of a randomized inequality or identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub name: String,
    pub trials: usize,
    /// Largest observed `lhs / bound` (or relative discrepancy for identities).
    pub max_ratio: f64,
    /// Human-readable witnesses of each violation.
    pub failures: Vec<String>,
}

impl OracleReport {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            trials: 0,
            max_ratio: 0.0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ratio: f64, limit: f64, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if ratio > self.max_ratio || ratio.is_nan() {
            self.max_ratio = ratio;
        }
        if !(ratio <= limit) && self.failures.len() < 20 {
            self.failures.push(witness());
        }
    }
}

/// Relative slack for inequalities whose bound is attained in the limit.
const ROUNDING_SLACK: f64 = 1e-10;

/// `C(η) τ^{-η/α}` with `C(η) = 2^{η/α} (1 + μ_1^{-2})^{η/2}`.
pub fn phi1_bound_constant(grid: &SpectralGrid, alpha: FracOrder, eta: f64, tau: f64) -> f64 {
    let mu1 = grid.mu(1);
    let a = alpha.value();
    2f64.powf(eta / a) * (1.0 + mu1.powi(-2)).powf(eta / 2.0) * tau.powf(-eta / a)
}

/// Checks `‖φ₁(iτ⟨∇⟩_α) v‖_{H^η} <= C(η) τ^{-η/α} ‖v‖_{L²}` on random
/// fields: half dense, half single modes placed near `τ|μ_l|^α ≈ 2` where
/// the bound is tightest.
pub fn oracle_phi1_bound(
    grid: SpectralGrid,
    alpha: FracOrder,
    etas: &[f64],
    taus: &[f64],
    trials: usize,
    seed: u64,
) -> OracleReport {
    let mut report = OracleReport::new("phi1_bound");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (grid.n() / 2) as i64;
    for trial in 0..trials {
        let v = if trial % 2 == 0 {
            let coeffs = (0..grid.n())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            WaveField::from_coeffs(grid, coeffs, 0.0).expect("finite")
        } else {
            let tau = taus[rng.gen_range(0..taus.len())];
            // mode with τ|μ_l|^α close to 2, jittered
            let target = (2.0 / tau).powf(1.0 / alpha.value()) / grid.mu(1);
            let l = ((target * rng.gen_range(0.5..1.5)).round() as i64).clamp(-half, half - 1);
            let l = if rng.gen_bool(0.5) { l } else { (-l).max(-half) };
            WaveField::mode(grid, l, Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)))
                .expect("mode in range")
        };
        let norm_v = v.l2_norm();
        for &tau in taus {
            let out = phi1_apply(&v, tau, alpha);
            for &eta in etas {
                let lhs = out.sobolev_norm(SobolevIndex::new(eta).expect("eta >= 0"));
                let bound = phi1_bound_constant(&grid, alpha, eta, tau) * norm_v;
                report.record(lhs / bound, 1.0 + ROUNDING_SLACK, || {
                    format!("trial {trial}, tau {tau}, eta {eta}: {lhs} > {bound}")
                });
            }
        }
    }
    report
}

/// `f₂(z) = |z|^{2σ-2} z²`, with `f₂(0) = 0`.
pub fn f2(z: Complex64, sigma: f64) -> Complex64 {
    let r2 = z.norm_sqr();
    if r2 == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z * z * r2.powf(sigma - 1.0)
    }
}

/// A random pair stressing the singular sets: nearby points, points near the
/// origin, small rotations, and generic pairs.
fn stress_pair(rng: &mut impl Rng, radius: f64) -> (Complex64, Complex64) {
    let in_disk = |rng: &mut dyn rand::RngCore, r: f64| {
        let rr = r * rng.gen::<f64>().sqrt();
        Complex64::from_polar(rr, rng.gen_range(0.0..2.0 * PI))
    };
    let log_uniform = |rng: &mut dyn rand::RngCore, lo: f64, hi: f64| {
        (rng.gen_range(lo.ln()..hi.ln())).exp()
    };
    match rng.gen_range(0..5) {
        0 => (in_disk(rng, radius), in_disk(rng, radius)),
        1 => {
            let z = in_disk(rng, radius);
            let d = Complex64::from_polar(log_uniform(rng, 1e-10, 1.0) * radius, rng.gen_range(0.0..2.0 * PI));
            (z, z + d)
        }
        2 => {
            let z = in_disk(rng, radius);
            let theta = log_uniform(rng, 1e-8, 1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let r = 1.0 - log_uniform(rng, 1e-8, 0.5) * if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
            (z, z * Complex64::from_polar(r, theta))
        }
        3 => {
            let small = log_uniform(rng, 1e-12, 1e-2) * radius;
            let z = Complex64::from_polar(small, rng.gen_range(0.0..2.0 * PI));
            let w = if rng.gen_bool(0.5) {
                Complex64::new(0.0, 0.0)
            } else {
                in_disk(rng, radius)
            };
            (z, w)
        }
        _ => {
            // same modulus near the boundary, radial neighbours
            let z = Complex64::from_polar(radius * (1.0 - log_uniform(rng, 1e-9, 1e-1)), rng.gen_range(0.0..2.0 * PI));
            let s = 1.0 - log_uniform(rng, 1e-9, 1e-1);
            (z, z * s)
        }
    }
}

/// Rounding in `f(z₁) - f(z₂)` for nearly equal arguments.
fn cancellation(a: Complex64, b: Complex64) -> f64 {
    8.0 * f64::EPSILON * (a.norm() + b.norm())
}

/// Checks `|f₂(z₁) - f₂(z₂)| <= 16 |z₁ - z₂|^{2σ}` for `0 < σ <= 1/2`.
pub fn oracle_f2_holder(sigmas: &[f64], trials: usize, seed: u64) -> OracleReport {
    let mut report = OracleReport::new("f2_holder");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report.record(
        (f2(Complex64::new(1.0, 0.0), 0.5) - f2(Complex64::new(0.0, 0.0), 0.5)).norm() / 16.0,
        1.0,
        || "z1 = 1, z2 = 0".into(),
    );
    for &sigma in sigmas {
        for trial in 0..trials {
            let radius = (rng.gen_range(-3.0f64..3.0)).exp();
            let (z1, z2) = stress_pair(&mut rng, radius);
            let (f1, f2v) = (f2(z1, sigma), f2(z2, sigma));
            let lhs = (f1 - f2v).norm();
            let rhs = 16.0 * (z1 - z2).norm().powf(2.0 * sigma) + cancellation(f1, f2v);
            let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
            report.record(ratio, 1.0 + ROUNDING_SLACK, || {
                format!("sigma {sigma}, trial {trial}: z1 = {z1}, z2 = {z2}, {lhs} > {rhs}")
            });
        }
    }
    report
}

/// Checks `|G(z₁) - G(z₂)| <= (1 + 2σ)|β| M₀^{2σ} |z₁ - z₂|` for pairs in
/// the disk of radius `M₀`.
pub fn oracle_lipschitz_g(params: &[NonlinearityParams], m0: f64, trials: usize, seed: u64) -> OracleReport {
    let mut report = OracleReport::new("lipschitz_g");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in params {
        let constant = (1.0 + 2.0 * p.sigma()) * p.beta().abs() * m0.powf(2.0 * p.sigma());
        for trial in 0..trials {
            let (z1, z2) = stress_pair(&mut rng, m0);
            let clamp = |z: Complex64| if z.norm() > m0 { z * (m0 / z.norm()) } else { z };
            let (z1, z2) = (clamp(z1), clamp(z2));
            let (g1, g2) = (p.g(z1), p.g(z2));
            let lhs = (g1 - g2).norm();
            let rhs = constant * (z1 - z2).norm() + cancellation(g1, g2);
            let ratio = if lhs == 0.0 { 0.0 } else { lhs / rhs };
            report.record(ratio, 1.0 + ROUNDING_SLACK, || {
                format!(
                    "beta {}, sigma {}, trial {trial}: z1 = {z1}, z2 = {z2}, {lhs} > {rhs}",
                    p.beta(),
                    p.sigma()
                )
            });
        }
    }
    report
}

/// `P_N(Vψ)` by direct discrete convolution with the potential's own
/// coefficients: `Σ_{k ∈ T_N} v_{l-k} ψ_k`.
pub fn convolution_potential(potential: &Potential, field: &WaveField) -> Vec<Complex64> {
    let g = field.grid();
    let n = g.n();
    (0..n)
        .map(|slot| {
            let l = g.mode(slot);
            (0..n)
                .map(|k| potential.coeff(l - g.mode(k)) * field.coeffs()[k])
                .sum()
        })
        .collect()
}

/// `P_N(|ψ|²ψ)` by two direct convolutions: `ρ = ψ * conj(ψ)(-·)`, then `ρ * ψ`.
pub fn convolution_cubic(field: &WaveField) -> Vec<Complex64> {
    let g = field.grid();
    let n = g.n() as i64;
    let c = |l: i64| field.coeff(l);
    // ρ_m = Σ_k ψ_{m+k} conj(ψ_k), m ∈ (-n, n)
    let rho: Vec<Complex64> = (-n + 1..n)
        .map(|m| (-n / 2..n / 2).map(|k| c(m + k) * c(k).conj()).sum())
        .collect();
    let rho_at = |m: i64| rho[(m + n - 1) as usize];
    (0..g.n())
        .map(|slot| {
            let l = g.mode(slot);
            (-n / 2..n / 2)
                .filter(|&k| (l - k).abs() < n)
                .map(|k| rho_at(l - k) * c(k))
                .sum()
        })
        .collect()
}

fn relative_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

fn random_field(rng: &mut impl Rng, grid: SpectralGrid) -> WaveField {
    let coeffs = (0..grid.n())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    WaveField::from_coeffs(grid, coeffs, 0.0).expect("finite")
}

/// `P_N((P_{2N}V)ψ)` by a `16N`-point quadrature of the product.
fn quadrature_product(potential: &Potential, field: &WaveField) -> Vec<Complex64> {
    let n = field.grid().n();
    let k = 16 * n;
    let fft = FftPair::new(k);
    let table = potential.fourier_table(2 * n).expect("table covers 2N");
    let mut v = Vec::new();
    pad_to(&table, k, &mut v);
    fft.inverse(&mut v);
    let mut psi = Vec::new();
    pad_to(field.coeffs(), k, &mut psi);
    fft.inverse(&mut psi);
    let mut prod: Vec<Complex64> = v.iter().zip(&psi).map(|(a, b)| a * b).collect();
    fft.forward(&mut prod);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    truncate_into(&prod, &mut out);
    out
}

/// Checks `P_N(Vψ) = P_N((P_{2N}V)ψ) = P_N(I_{3N}((P_{2N}V)ψ))` for random
/// `ψ ∈ Y_N`: direct convolution, `16N`-point quadrature, and the `3N`-point
/// evaluation must agree to `tol` relative.
pub fn oracle_efp_identity(
    potentials: &[Potential],
    ns: &[usize],
    trials: usize,
    tol: f64,
    seed: u64,
) -> OracleReport {
    let mut report = OracleReport::new("efp_identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in potentials {
        for &n in ns {
            let grid = SpectralGrid::new(v.a(), v.b(), n).expect("even n");
            for trial in 0..trials {
                let psi = random_field(&mut rng, grid);
                let direct = convolution_potential(v, &psi);
                let quad = quadrature_product(v, &psi);
                let efp = potential_apply_efp(v, &psi).expect("table covers 2N");
                let gap = relative_gap(&direct, &quad).max(relative_gap(&direct, &efp));
                report.record(gap, tol, || {
                    format!("{} N = {n}, trial {trial}: relative gap {gap:e}", v.kind().label())
                });
            }
        }
    }
    report
}

/// Checks that `3N`-point quadrature of `|ψ|²ψ` equals the exact truncated
/// convolution for random `ψ ∈ Y_N`.
pub fn oracle_fswq_cubic(ns: &[usize], trials: usize, tol: f64, seed: u64) -> OracleReport {
    let mut report = OracleReport::new("fswq_cubic");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cubic = NonlinearityParams::new(1.0, 1.0).expect("valid");
    for &n in ns {
        let grid = SpectralGrid::new(-16.0, 16.0, n).expect("even n");
        for trial in 0..trials {
            let psi = random_field(&mut rng, grid);
            let direct = convolution_cubic(&psi);
            let quad = g_coeffs_fswq(&psi, &cubic, QuadratureConfig::default());
            let gap = relative_gap(&direct, &quad);
            report.record(gap, tol, || format!("N = {n}, trial {trial}: relative gap {gap:e}"));
        }
    }
    report
}
