//! Runs the quick cargo examples end to end.

use std::process::Command;

fn run_example(name: &str, args: &[&str]) -> String {
    let o = Command::new(env!("CARGO"))
        .args(["run", "--quiet", "--profile", "test", "--example", name, "--"])
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("cargo runs");
    assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn quick_examples_run() {
    let free = run_example("free_flow", &[]);
    assert!(free.contains("relative error"));
    let fs_fp = run_example("fs_vs_fp", &[]);
    assert_eq!(fs_fp.lines().count(), 6);
    let gen = run_example("potential_gen", &[]);
    assert!(gen.contains("v_0 = 1"));
    let ident = run_example("efp_identity", &[]);
    assert!(ident.lines().all(|l| l.ends_with("passed true")), "{ident}");
}
