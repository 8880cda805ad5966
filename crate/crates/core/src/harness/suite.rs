use crate::field::FracOrder;
use crate::grid::SpectralGrid;
use crate::physics::{NonlinearityParams, Potential};
use crate::verification::{
    oracle_efp_identity, oracle_f2_holder, oracle_fswq_cubic, oracle_lipschitz_g, oracle_phi1_bound,
    OracleReport,
};

/// Trial counts and seed of the standard oracle run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSuite {
    /// Random fields per fractional order in the `φ₁` bound check.
    pub fields: usize,
    /// Random pairs per exponent in the pointwise inequalities.
    pub pairs: usize,
    /// Random fields per grid size in the exactness identities.
    pub identity_trials: usize,
    pub identity_tol: f64,
    pub seed: u64,
}

impl Default for OracleSuite {
    fn default() -> Self {
        Self {
            fields: 1000,
            pairs: 10_000,
            identity_trials: 100,
            identity_tol: 1e-12,
            seed: 0,
        }
    }
}

pub const IDENTITY_GRIDS: [usize; 4] = [8, 16, 32, 64];
pub const HOLDER_SIGMAS: [f64; 4] = [0.1, 0.25, 0.4, 0.5];
pub const LIPSCHITZ_SIGMAS: [f64; 3] = [0.1, 0.5, 1.0];

impl OracleSuite {
    /// The inequality checks: `φ₁` smoothing, `f₂` Hölder, `G` Lipschitz.
    pub fn inequalities(&self) -> Vec<OracleReport> {
        let grid = SpectralGrid::new(-16.0, 16.0, 64).expect("valid grid");
        let mut phi1 = Vec::new();
        for (i, alpha) in [1.2, 1.5, 2.0].into_iter().enumerate() {
            let a = FracOrder::new(alpha).expect("valid order");
            phi1.push(oracle_phi1_bound(
                grid,
                a,
                &[0.0, alpha / 2.0, alpha],
                &[1e-3, 1e-2, 0.1, 0.5],
                self.fields,
                self.seed.wrapping_add(i as u64),
            ));
        }
        let params: Vec<NonlinearityParams> = LIPSCHITZ_SIGMAS
            .iter()
            .flat_map(|&s| [-1.0, 2.5].map(|b| NonlinearityParams::new(b, s).expect("valid")))
            .collect();
        let mut out = vec![merge("phi1_bound", phi1)];
        out.push(oracle_f2_holder(&HOLDER_SIGMAS, self.pairs, self.seed.wrapping_add(10)));
        let lipschitz = [0.5, 1.0, 2.0]
            .iter()
            .enumerate()
            .map(|(i, &m0)| oracle_lipschitz_g(&params, m0, self.pairs, self.seed.wrapping_add(20 + i as u64)))
            .collect();
        out.push(merge("lipschitz_g", lipschitz));
        out
    }

    /// The exactness identities: extended pseudospectral potential product
    /// and cubic quadrature.
    pub fn identities(&self) -> Vec<OracleReport> {
        let modes = 2 * IDENTITY_GRIDS.iter().max().copied().unwrap_or(8);
        let potentials = [
            Potential::custom(-16.0, 16.0, constant_table(modes, -0.75)).expect("hermitian"),
            Potential::square_well(-16.0, 16.0, modes).expect("fits"),
            Potential::random_decay(-16.0, 16.0, self.seed, 1 << 18, modes).expect("valid"),
        ];
        vec![
            oracle_efp_identity(
                &potentials,
                &IDENTITY_GRIDS,
                self.identity_trials,
                self.identity_tol,
                self.seed.wrapping_add(30),
            ),
            oracle_fswq_cubic(
                &IDENTITY_GRIDS,
                self.identity_trials,
                self.identity_tol,
                self.seed.wrapping_add(40),
            ),
        ]
    }

    pub fn run(&self) -> Vec<OracleReport> {
        let mut all = self.inequalities();
        all.extend(self.identities());
        all
    }
}

fn constant_table(modes: usize, c: f64) -> Vec<num_complex::Complex64> {
    let mut t = vec![num_complex::Complex64::new(0.0, 0.0); modes];
    t[0] = num_complex::Complex64::new(c, 0.0);
    t
}

fn merge(name: &str, parts: Vec<OracleReport>) -> OracleReport {
    let mut out = OracleReport {
        name: name.to_string(),
        trials: 0,
        max_ratio: 0.0,
        failures: Vec::new(),
    };
    for p in parts {
        out.trials += p.trials;
        if p.max_ratio > out.max_ratio || p.max_ratio.is_nan() {
            out.max_ratio = p.max_ratio;
        }
        out.failures.extend(p.failures);
    }
    out
}
