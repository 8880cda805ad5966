//! CSV and plain-text outputs of studies and simulations.
//!
//! * `errors.csv`: `refinement,e_l2,e_h_alpha_half,discarded_flag`, where
//!   the flag is a bitmask (1: dropped from the L² fit, 2: dropped from the
//!   `H^{α/2}` fit).
//! * `fit.csv`: `norm,slope,intercept,r2,expected,verdict`; the numeric
//!   fields are empty when the verdict is `floor`.
//! * `meta.txt`: `key = value` lines.
//! * snapshots: `t,x,abs_psi`, time-major.
//!
//! Floats are written in shortest round-trip form, so parsing a file gives
//! back the exact values.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::study::{ConvergenceReport, NormResult, Verdict};
use crate::integrators::Trajectory;
use crate::verification::{ErrorSample, NormKind, OrderFit};

pub const ERRORS_HEADER: [&str; 4] = ["refinement", "e_l2", "e_h_alpha_half", "discarded_flag"];
pub const FIT_HEADER: [&str; 6] = ["norm", "slope", "intercept", "r2", "expected", "verdict"];
pub const SNAPSHOT_HEADER: [&str; 3] = ["t", "x", "abs_psi"];

pub fn write_errors_csv<W: Write>(out: W, samples: &[ErrorSample], discarded: &[u8]) -> Result<()> {
    if samples.len() != discarded.len() {
        return Err(Error::LengthMismatch {
            expected: samples.len(),
            found: discarded.len(),
        });
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ERRORS_HEADER)?;
    for (s, flag) in samples.iter().zip(discarded) {
        w.write_record([
            s.refinement.to_string(),
            s.e_l2.to_string(),
            s.e_h_alpha_half.to_string(),
            flag.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Inverse of [`write_errors_csv`]; `t` is not stored in the table.
pub fn parse_errors_csv<R: Read>(input: R, t: f64) -> Result<Vec<(ErrorSample, u8)>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(r.headers()?, &ERRORS_HEADER)?;
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let num = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| Error::Format(format!("bad number '{}' in errors.csv", &record[i])))
        };
        let flag = record[3]
            .parse::<u8>()
            .ok()
            .filter(|f| *f <= 3)
            .ok_or_else(|| Error::Format(format!("bad discarded_flag '{}'", &record[3])))?;
        rows.push((
            ErrorSample {
                refinement: num(0)?,
                e_l2: num(1)?,
                e_h_alpha_half: num(2)?,
                t,
            },
            flag,
        ));
    }
    Ok(rows)
}

pub fn write_fit_csv<W: Write>(out: W, norms: &[NormResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIT_HEADER)?;
    for n in norms {
        let (slope, intercept, r2) = match n.fit {
            Some(f) => (f.slope.to_string(), f.intercept.to_string(), f.r_squared.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            n.norm.label().to_string(),
            slope,
            intercept,
            r2,
            n.expected.to_string(),
            n.verdict.label().to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One parsed `fit.csv` row.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub norm: NormKind,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r2: Option<f64>,
    pub expected: f64,
    pub verdict: Verdict,
}

pub fn parse_fit_csv<R: Read>(input: R) -> Result<Vec<FitRow>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(r.headers()?, &FIT_HEADER)?;
    let opt = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse()
                .map(Some)
                .map_err(|_| Error::Format(format!("bad number '{s}' in fit.csv")))
        }
    };
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let norm = match &record[0] {
            "l2" => NormKind::L2,
            "h_alpha_half" => NormKind::Energy,
            other => return Err(Error::Format(format!("unknown norm '{other}'"))),
        };
        rows.push(FitRow {
            norm,
            slope: opt(&record[1])?,
            intercept: opt(&record[2])?,
            r2: opt(&record[3])?,
            expected: opt(&record[4])?
                .ok_or_else(|| Error::Format("missing expected order".into()))?,
            verdict: record[5].parse()?,
        });
    }
    Ok(rows)
}

fn check_header(found: &csv::StringRecord, want: &[&str]) -> Result<()> {
    if found.iter().eq(want.iter().copied()) {
        Ok(())
    } else {
        Err(Error::Format(format!("header {found:?}, expected {want:?}")))
    }
}

pub fn meta_lines(report: &ConvergenceReport) -> Vec<(String, String)> {
    let c = &report.config;
    let mut m: Vec<(String, String)> = vec![
        ("mode".into(), c.mode().label().into()),
        ("crate_version".into(), env!("CARGO_PKG_VERSION").into()),
        ("domain".into(), format!("({}, {})", c.a, c.b)),
        ("alpha".into(), c.alpha.value().to_string()),
        ("beta".into(), c.nonlinearity.beta().to_string()),
        ("sigma".into(), c.nonlinearity.sigma().to_string()),
        ("potential".into(), c.potential.to_string()),
        ("seed".into(), c.potential.seed().map_or("none".into(), |s| s.to_string())),
        ("potential_table_modes".into(), c.table_modes().to_string()),
        ("initial".into(), c.initial.label().into()),
        ("t_final".into(), c.t_final.to_string()),
        ("integrator".into(), c.integrator.label().into()),
        ("k_factor".into(), c.quad.k_factor().to_string()),
        ("ladder".into(), ladder_text(&c.ladder)),
        ("reference_integrator".into(), c.reference.integrator.label().into()),
        ("reference_tau".into(), c.reference.tau.to_string()),
        ("reference_n".into(), c.reference.n.to_string()),
        ("reference_key".into(), report.reference_key.hex()),
        ("reference_source".into(), format!("{:?}", report.reference_source)),
        ("regularity_m".into(), c.expected.m.to_string()),
        ("tolerance".into(), c.tolerance.to_string()),
    ];
    for n in &report.norms {
        let label = n.norm.label();
        m.push((
            format!("reference_error_{label}"),
            n.reference_error.map_or("not estimated".into(), |e| e.to_string()),
        ));
        if let Some(OrderFit {
            points_used,
            points_discarded,
            ..
        }) = n.fit
        {
            m.push((format!("points_used_{label}"), points_used.to_string()));
            m.push((format!("points_discarded_{label}"), points_discarded.to_string()));
        }
    }
    for (norm, bad) in &report.monotonicity {
        if !bad.is_empty() {
            m.push((format!("monotonicity_violations_{}", norm.label()), format!("{bad:?}")));
        }
    }
    for f in &report.failures {
        m.push(("failed_point".into(), format!("{} ({})", f.refinement, f.reason)));
    }
    m.push(("wall_time_s".into(), format!("{:.3}", report.wall_time.as_secs_f64())));
    m
}

fn ladder_text(l: &crate::harness::config::Ladder) -> String {
    use crate::harness::config::Ladder;
    match l {
        Ladder::Time(v) => v.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
        Ladder::Space(v) => v.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
    }
}

pub fn write_meta<W: Write>(mut out: W, lines: &[(String, String)]) -> Result<()> {
    let text: String = lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Format(format!("writing metadata: {e}")))
}

/// Writes `errors.csv`, `fit.csv` and `meta.txt` into `dir`.
pub fn emit_report(report: &ConvergenceReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let errors = dir.join("errors.csv");
    write_errors_csv(create(&errors)?, &report.samples, &report.discarded)?;
    let fit = dir.join("fit.csv");
    write_fit_csv(create(&fit)?, &report.norms)?;
    let meta = dir.join("meta.txt");
    write_meta(create(&meta)?, &meta_lines(report))?;
    Ok(vec![errors, fit, meta])
}

pub(crate) fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|e| Error::io(path, e))
}

pub fn write_snapshots_csv<W: Write>(out: W, trajectory: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SNAPSHOT_HEADER)?;
    for snap in &trajectory.snapshots {
        let t = snap.time().to_string();
        let xs = snap.grid().points();
        for (x, v) in xs.iter().zip(snap.samples()) {
            w.write_record([t.as_str(), &x.to_string(), &v.norm().to_string()])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
