use std::fs;
use std::path::Path;
use std::process::Command;

use sfnls::harness::cli::{EXIT_BLOWUP, EXIT_OK, EXIT_USAGE};
use sfnls::harness::{cli_main, parse_errors_csv, parse_fit_csv, Verdict};

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["sfnls"];
    argv.extend_from_slice(args);
    cli_main(argv)
}

fn out(dir: &Path) -> &str {
    dir.to_str().unwrap()
}

#[test]
fn binary_rejects_odd_grid_and_unknown_flags() {
    let bin = env!("CARGO_BIN_EXE_sfnls");
    let o = Command::new(bin).args(["simulate", "--n", "15"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("even"));

    let o = Command::new(bin).args(["simulate", "--bogus"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn binary_verify_with_defaults_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sfnls"))
        .args(["verify", "--out", out(dir.path())])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&o.stdout));
    let table = fs::read_to_string(dir.path().join("oracles.csv")).unwrap();
    assert!(table.starts_with("name,trials,max_ratio,failures,verdict"));
    assert_eq!(table.lines().count(), 6);
    assert!(table.lines().skip(1).all(|l| l.ends_with(",0,pass")));
}

#[test]
fn simulate_writes_snapshot_rows() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&[
        "simulate", "--alpha", "1.2", "--potential", "square-well", "--snapshots", "25", "--n", "64",
        "--tau", "1e-2", "--out", out(dir.path()),
    ]);
    assert_eq!(code, EXIT_OK);
    let csv = fs::read_to_string(dir.path().join("snapshots.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,x,abs_psi"));
    // t = 0, 0.25, 0.5, 0.75, 1
    assert_eq!(lines.count(), 5 * 64);
    let first_row: Vec<f64> = csv.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first_row[..2], [0.0, -16.0]);
    assert!(dir.path().join("final.sfnl").exists());
    let meta = fs::read_to_string(dir.path().join("meta.txt")).unwrap();
    assert!(meta.contains("steps = 100"));
}

#[test]
fn simulate_records_a_short_last_step() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&[
        "simulate", "--n", "32", "--tau", "0.3", "--t-final", "1", "--potential", "none", "--out",
        out(dir.path()),
    ]);
    assert_eq!(code, EXIT_OK);
    let meta = fs::read_to_string(dir.path().join("meta.txt")).unwrap();
    assert!(meta.contains("steps = 4"), "{meta}");
    assert!(!meta.contains("last_step = none"));
}

#[test]
fn blow_up_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&[
        "simulate", "--n", "32", "--tau", "0.1", "--beta", "-1e12", "--sigma", "3", "--potential", "none",
        "--out", out(dir.path()),
    ]);
    assert_eq!(code, EXIT_BLOWUP);
}

#[test]
fn linear_ladder_reports_floor() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&[
        "converge-time", "--beta", "0", "--potential", "none", "--n", "64", "--ladder", "0.04,0.02,0.01",
        "--t-final", "0.2", "--integrator-ref", "ewi-fs", "--out", out(dir.path()),
    ]);
    assert_eq!(code, EXIT_OK);
    let fits = parse_fit_csv(fs::File::open(dir.path().join("fit.csv")).unwrap()).unwrap();
    assert_eq!(fits.len(), 2);
    assert!(fits.iter().all(|f| f.verdict == Verdict::Floor && f.slope.is_none()));
}

#[test]
fn temporal_study_is_deterministic_and_cached() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cache = tempfile::tempdir().unwrap();
    let args = |o: &str| {
        vec![
            "converge-time".to_string(),
            "--alpha".into(),
            "1.5".into(),
            "--potential".into(),
            "random-decay".into(),
            "--seed".into(),
            "5".into(),
            "--n".into(),
            "64".into(),
            "--ladder".into(),
            "0.04,0.02,0.01,0.005".into(),
            "--t-final".into(),
            "0.2".into(),
            "--cache".into(),
            cache.path().to_str().unwrap().into(),
            "--out".into(),
            o.into(),
        ]
    };
    let with_bin = |v: Vec<String>| std::iter::once("sfnls".to_string()).chain(v).collect::<Vec<_>>();
    let code = cli_main(with_bin(args(out(a.path()))));
    assert!(code == 0 || code == 1, "exit {code}");
    assert_eq!(cli_main(with_bin(args(out(b.path())))), code);
    for file in ["errors.csv", "fit.csv"] {
        assert_eq!(
            fs::read(a.path().join(file)).unwrap(),
            fs::read(b.path().join(file)).unwrap(),
            "{file}"
        );
    }
    let meta_a = fs::read_to_string(a.path().join("meta.txt")).unwrap();
    let meta_b = fs::read_to_string(b.path().join("meta.txt")).unwrap();
    assert!(meta_a.contains("reference_source = Miss"));
    assert!(meta_b.contains("reference_source = Hit"));
    let rows = parse_errors_csv(fs::File::open(a.path().join("errors.csv")).unwrap(), 0.2).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].0.refinement, 0.04);
}

#[test]
fn temporal_grid_flags_must_agree() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&["converge-time", "--n", "64", "--ref-n", "128", "--out", out(dir.path())]),
        EXIT_USAGE
    );
}

#[test]
fn generated_potential_feeds_a_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&["potential-gen", "--potential", "random-decay", "--seed", "4", "--n", "256", "--out", out(dir.path())]);
    assert_eq!(code, EXIT_OK);
    let table = dir.path().join("potential.sfnl");
    let samples = fs::read_to_string(dir.path().join("potential_samples.csv")).unwrap();
    assert_eq!(samples.lines().count(), 257);

    let spec = format!("file:{}", table.display());
    let sim = dir.path().join("sim");
    let code = run(&["simulate", "--potential", &spec, "--n", "64", "--tau", "0.01", "--t-final", "0.1", "--out", out(&sim)]);
    assert_eq!(code, EXIT_OK);
    // the table only covers 2N up to N = 128
    let code = run(&["simulate", "--potential", &spec, "--n", "256", "--tau", "0.01", "--t-final", "0.1", "--out", out(&sim)]);
    assert_eq!(code, EXIT_USAGE);
}
