//! End-to-end tests against the real binary (exit codes, schemas,
//! determinism).

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kicked-ising"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn simulate_matches_closed_form_and_is_deterministic() {
    let args = ["simulate", "--n", "5", "--tau", "pi/4", "--theta", "0", "--phi", "0", "--steps", "12"];
    let first = run(&args);
    assert!(first.status.success());
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "identical config must be bit-identical");

    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,linear_entropy,concurrence"));
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        assert_eq!(fields[0].parse::<usize>().unwrap(), idx);
        let s: f64 = fields[1].parse().unwrap();
        let c: f64 = fields[2].parse().unwrap();
        let expected =
            kicked_ising::analytic_entropy(5, kicked_ising::InitialState::AllZero, idx as u64)
                .unwrap();
        assert!((s - expected).abs() < 1e-10, "row {idx}: S = {s}, expected {expected}");
        assert!(c.abs() < 1e-9, "row {idx}: C = {c}");
    }
}

#[test]
fn simulate_zero_steps_emits_single_zero_row() {
    let out = run(&["simulate", "--n", "4", "--steps", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "0");
    assert!(fields[1].parse::<f64>().unwrap().abs() < 1e-14);
    assert!(fields[2].parse::<f64>().unwrap().abs() < 1e-14);
}

#[test]
fn simulate_plus_y_state_alternates_for_even_sizes() {
    let out = run(&["simulate", "--n", "8", "--state", "plus-y", "--steps", "8"]);
    assert!(out.status.success());
    for (idx, line) in stdout(&out).lines().skip(1).enumerate() {
        let s: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        let expected = if idx % 2 == 1 { 0.5 } else { 0.0 };
        assert!((s - expected).abs() < 1e-12, "n = {idx}");
    }
}

#[test]
fn simulate_json_schema() {
    let out = run(&["simulate", "--n", "6", "--steps", "4", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "simulate");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);
    assert!(doc["rows"][0]["linear_entropy"].is_number());
}

#[test]
fn spectrum_grid_check_passes_at_pi_over_4() {
    let out = run(&["spectrum", "--n", "6", "--tau", "pi/4", "--check-pi4-grid"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["spectrum"]["eigenphases"].as_array().unwrap().len(), 7);
    assert_eq!(doc["pi4_grid"]["ok"], true);
    let mults: usize = doc["spectrum"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["multiplicity"].as_u64().unwrap() as usize)
        .sum();
    assert_eq!(mults, 7);
}

#[test]
fn spectrum_grid_check_fails_informatively_off_grid() {
    let out = run(&["spectrum", "--n", "6", "--tau", "0.5", "--check-pi4-grid"]);
    assert_eq!(out.status.code(), Some(2));
    // the report is still written, with the failure spelled out
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pi4_grid"]["ok"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
}

#[test]
fn trivial_single_qubit_spectrum() {
    let out = run(&["spectrum", "--n", "1", "--tau", "0"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let groups = doc["spectrum"]["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0]["multiplicity"], 2);
    assert!(groups[0]["center"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn periodicity_reports_both_periods() {
    let out = run(&["periodicity", "--n", "6", "--tau", "pi/4", "--n-max", "64"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["operator_period"], 8);
    assert_eq!(doc["entropy_period"], 4);
    assert_eq!(doc["delta_n_start"], 2);
    assert_eq!(doc["delta"].as_array().unwrap().len(), 63);
    // δ(9) = 0 at index 9 − 2
    assert!(doc["delta"][7].as_f64().unwrap() < 1e-9);
}

#[test]
fn verify_passes_by_default_and_fails_loudly_when_detuned() {
    let ok = run(&["verify"]);
    assert!(ok.status.success(), "stderr: {}", String::from_utf8_lossy(&ok.stderr));
    let text = stdout(&ok);
    assert!(text.contains("verify: PASS"));
    assert!(text.contains("0 failures"));

    let bad = run(&["verify", "--tau", "0.24pi"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn sweep_emits_one_record_per_job_in_order() {
    let out = run(&[
        "sweep", "--n", "6,7", "--tau", "pi/4,1.0", "--n-max", "32", "--max-period", "64",
        "--workers", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let records: Vec<serde_json::Value> =
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    let keys: Vec<(u64, bool)> = records
        .iter()
        .map(|r| (r["n_qubits"].as_u64().unwrap(), r["operator_period"].is_null()))
        .collect();
    // jobs in input order: (6, π/4), (6, 1.0), (7, π/4), (7, 1.0)
    assert_eq!(keys, vec![(6, false), (6, true), (7, false), (7, true)]);
    assert_eq!(records[0]["operator_period"], 8);
    assert_eq!(records[2]["operator_period"], 12);
}

#[test]
fn sweep_honors_delta_stride() {
    let out = run(&[
        "sweep", "--n", "6", "--tau", "pi/4", "--n-max", "32", "--max-period", "64",
        "--delta-stride", "4",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(doc["delta_stride"], 4);
    assert_eq!(doc["delta"].as_array().unwrap().len(), 8); // ceil(31 / 4)
}

#[test]
fn oracle_check_small_run_passes() {
    let out = run(&["oracle-check", "--max-qubits", "4", "--states", "3", "--steps", "6"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("oracle-check: PASS"));
    // the benchmark report goes to stderr, keeping stdout deterministic
    assert!(String::from_utf8_lossy(&out.stderr).contains("cost asymmetry"));
}

#[test]
fn sweep_worker_pool_env_override() {
    let out = bin()
        .args(["sweep", "--n", "6", "--tau", "pi/4", "--n-max", "16", "--max-period", "16"])
        .env("KICKED_ISING_WORKERS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn numerical_failures_exit_three() {
    // a huge grouping tolerance chains distinct phases into one group wider
    // than itself, which the spectrum analysis reports as a numerical failure
    let out = run(&["periodicity", "--n", "8", "--tau", "1.0", "--grouping-tol", "3.0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["simulate", "--n", "5", "--tau", "pie"]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--n", "", "--tau", "pi/4"]).status.code(), Some(1));
    assert_eq!(run(&["simulate"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--n", "0"]).status.code(), Some(1));
}

#[test]
fn output_files_are_written() {
    let dir = std::env::temp_dir().join(format!("kicked-ising-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trajectory.csv");
    let out = run(&["simulate", "--n", "5", "--steps", "3", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,linear_entropy,concurrence"));
    assert_eq!(written.lines().count(), 5);
    std::fs::remove_dir_all(Path::new(&dir)).unwrap();
}
