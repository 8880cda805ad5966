//! Experiment orchestration: study configuration, reference caching,
//! convergence studies, report files and the command line.

pub mod cache;
pub mod cli;
pub mod config;
pub mod report;
pub mod study;
pub mod suite;

pub use cache::{read_field, write_field, CacheKey, CacheOutcome, FieldRecord, ReferenceCache};
pub use cli::cli_main;
pub use config::{Ladder, PotentialSpec, ReferenceSpec, StudyConfig, StudyMode};
pub use report::{emit_report, parse_errors_csv, parse_fit_csv, write_snapshots_csv};
pub use study::{reference_key, run_convergence_study, ConvergenceReport, NormResult, PointFailure, Verdict};
pub use suite::OracleSuite;
