//! The 3N-point evaluation of P_N(Vψ) against direct convolution and a
//! 16N-point quadrature, and the 3N-point cubic quadrature against the
//! exact triple convolution.

use sfnls::harness::OracleSuite;

fn main() {
    let suite = OracleSuite {
        identity_trials: 20,
        ..OracleSuite::default()
    };
    for r in suite.identities() {
        println!("{:<13} {:>4} trials  max relative gap {:.2e}  passed {}", r.name, r.trials, r.max_ratio, r.passed());
    }
}
