//! Randomized checks of the φ₁ smoothing bound, the 2σ-Hölder bound with
//! C = 16, and the local Lipschitz constant of G.

use sfnls::harness::OracleSuite;

fn main() {
    let suite = OracleSuite {
        fields: 200,
        pairs: 2000,
        ..OracleSuite::default()
    };
    for r in suite.inequalities() {
        println!("{:<12} {:>6} trials  max ratio {:.4}  violations {}", r.name, r.trials, r.max_ratio, r.failures.len());
    }
}
