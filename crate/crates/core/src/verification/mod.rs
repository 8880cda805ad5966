//! Error measurement, convergence-order fitting, and runnable checks of the
//! inequalities behind the error analysis.

mod errors;
mod fit;
mod oracles;

pub use errors::{error_pair, ErrorSample};
pub use fit::{
    fit_order, fit_order_with, monotonicity_violations, ExpectedOrders, FitOptions, NormKind,
    OrderFit,
};
pub use oracles::{
    convolution_cubic, convolution_potential, f2, oracle_efp_identity, oracle_f2_holder,
    oracle_fswq_cubic, oracle_lipschitz_g, oracle_phi1_bound, phi1_bound_constant, OracleReport,
};
