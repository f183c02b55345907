use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use monogamy_ising::experiment::{read_csv, CSV_HEADER};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monogamy-ising"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn out_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_with_no_evolution_writes_initial_records() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["run", "--steps", "0", "--out", out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records = read_csv(&dir.path().join("run.csv")).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.step == 1 && r.delta_n2.abs() <= 1e-9 && r.delta_d.abs() <= 1e-9));

    let o = cli(&[
        "run", "--steps", "0", "--regime", "frustrated", "--mode", "exact", "--out", out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_csv(&dir.path().join("run.csv")).unwrap().len(), 1);
}

#[test]
fn default_run_layout() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["run", "--out", out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 41);
    let summary = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    for key in [
        "frustrated.exact.epsilon_max",
        "nonfrustrated.trotter2.min_ground_prob",
        "nonfrustrated.exact.final_delta_D",
    ] {
        assert!(summary.lines().any(|l| l.starts_with(&format!("{key} = "))), "{key}");
    }
}

#[test]
fn explicit_samples_and_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&[
        "run", "--samples", "1,11,21", "--mode", "trotter2", "--regime", "nonfrustrated",
        "--out", out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let steps: Vec<usize> = read_csv(&dir.path().join("run.csv")).unwrap().iter().map(|r| r.step).collect();
    assert_eq!(steps, vec![1, 11, 21]);
}

#[test]
fn validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    for args in [
        vec!["run", "--unknown-flag"],
        vec!["run", "--samples", "0,3", "--out", out],
        vec!["run", "--samples", "5,3", "--out", out],
        vec!["run", "--kappa", "-1", "--out", out],
        vec!["run", "--zeta", "0", "--out", out],
        vec!["run", "--mode", "rk4"],
        vec!["sweep", "--over", "kappa", "--shape", "linear", "--out", out],
        vec!["frobnicate"],
    ] {
        let o = cli(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
    assert!(!dir.path().join("run.csv").exists());
}

#[test]
fn io_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not_a_dir");
    fs::write(&file, "x").unwrap();
    let o = cli(&["run", "--steps", "0", "--out", out_arg(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not_a_dir"));
}

#[test]
fn verify_passes() {
    let o = cli(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn sweep_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["sweep", "--values", "2,3.6", "--out", out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(stdout.lines().count(), 5);
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);

    let o = cli(&["sweep", "--over", "steps", "--values", "10,20", "--shape", "linear", "--out", out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(cli(&["run", "--out", out_arg(a.path())]).status.code(), Some(0));
    assert_eq!(cli(&["run", "--out", out_arg(b.path())]).status.code(), Some(0));
    for f in ["run.csv", "summary.txt"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
    }
}
