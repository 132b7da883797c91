//! End-to-end tests of the `qadder` binary: command surface, document
//! formats, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qadder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qadder"))
        .args(args)
        .env_remove("QADDER_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qadder-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn region_classical_has_the_expected_corner() {
    let doc = stdout_json(&qadder(&["region", "--scenario", "classical"]));
    let vertices = doc["vertices"].as_array().unwrap();
    assert!(vertices
        .iter()
        .any(|v| (v[0].as_f64().unwrap() - 1.0).abs() < 1e-9
            && (v[1].as_f64().unwrap() - 0.5).abs() < 1e-9));
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn region_ghz_sum_constraint() {
    let doc = stdout_json(&qadder(&["region", "--scenario", "ghz"]));
    let caps: Vec<f64> = doc["constraints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["c"].as_f64().unwrap())
        .collect();
    assert!(caps.iter().any(|&c| (c - 2.5).abs() < 1e-12));
}

#[test]
fn region_maximal_sender_sender_entanglement() {
    let doc = stdout_json(&qadder(&["region", "--scenario", "ss:0.70710678"]));
    for c in doc["constraints"].as_array().unwrap() {
        assert!((c["c"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    }
    let notes = doc["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("conjectured converse")));
}

#[test]
fn region_rejects_unknown_scenario() {
    let output = qadder(&["region", "--scenario", "heptagon"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn optimize_two_ebit_pauli_hits_the_cap() {
    let doc = stdout_json(&qadder(&[
        "optimize",
        "--scenario",
        "2ebit",
        "--mode",
        "pauli",
        "--restarts",
        "2",
        "--budget",
        "400",
        "--seed",
        "42",
    ]));
    let best = doc["best_value"].as_f64().unwrap();
    assert!((best - 3.188_721_875_540_867).abs() < 1e-9, "best {best}");
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["sender1"].as_array().unwrap().len(), 4);
}

#[test]
fn optimize_unassisted_reaches_three_halves() {
    let doc = stdout_json(&qadder(&[
        "optimize",
        "--scenario",
        "unassisted",
        "--restarts",
        "3",
        "--budget",
        "2000",
        "--seed",
        "42",
    ]));
    let best = doc["best_value"].as_f64().unwrap();
    assert!((best - 1.5).abs() < 1e-6, "best {best}");
    assert_eq!(doc["mode"], "prepare");
}

#[test]
fn optimize_seed_defaults_from_environment() {
    let output = Command::new(env!("CARGO_BIN_EXE_qadder"))
        .args([
            "optimize",
            "--scenario",
            "2ebit",
            "--mode",
            "pauli",
            "--restarts",
            "1",
            "--budget",
            "200",
        ])
        .env("QADDER_SEED", "1234")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["seed"], 1234);
}

#[test]
fn optimize_rejects_inconsistent_mode() {
    let output = qadder(&["optimize", "--scenario", "unassisted", "--mode", "pauli"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ratesum_csv_table_is_stable() {
    let output = qadder(&["ratesum", "--max", "4"]);
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "L,quantum_sum,classical_sum,asymptote,oracle");
    let quantum: Vec<f64> = lines[1..5]
        .iter()
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let expected = [2.0, 3.188_721_876, 4.0, 4.600_602_53];
    for (actual, target) in quantum.iter().zip(expected) {
        assert!((actual - target).abs() < 1e-6, "{actual} vs {target}");
    }
    // rerun: identical bytes
    let again = qadder(&["ratesum", "--max", "4"]);
    assert_eq!(text, String::from_utf8(again.stdout).unwrap());
}

#[test]
fn ratesum_doubling_slope_in_log_space() {
    let doc = stdout_json(&qadder(&[
        "ratesum", "--list", "512,1024", "--format", "json",
    ]));
    let rows = doc["rows"].as_array().unwrap();
    let q512 = rows[0]["quantum_sum"].as_f64().unwrap();
    let q1024 = rows[1]["quantum_sum"].as_f64().unwrap();
    assert!((q1024 - q512 - 1.5).abs() < 0.1);
    assert!(rows[0].get("oracle").is_none());
}

#[test]
fn ratesum_requires_exactly_one_selector() {
    assert_eq!(qadder(&["ratesum"]).status.code(), Some(2));
    assert_eq!(
        qadder(&["ratesum", "--max", "3", "--list", "1,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ratesum_writes_plot_script() {
    let out = temp_file("table.csv", "");
    let script = temp_file("table.gp", "");
    let output = qadder(&[
        "ratesum",
        "--max",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--plot-script",
        script.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let gp = std::fs::read_to_string(&script).unwrap();
    assert!(gp.contains("logscale x 2"));
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("L,"));
}

#[test]
fn simulate_dense_coding_is_zero_error() {
    let doc = stdout_json(&qadder(&["simulate", "--code", "dense"]));
    assert_eq!(doc["zero_error"], true);
    assert!(doc["average_error"].as_f64().unwrap() <= 1e-12);
    assert_eq!(doc["rates"][0], 2.0);
}

#[test]
fn simulate_lifted_zero_error_code() {
    let path = temp_file(
        "ze23.json",
        r#"{"n": 2, "book1": ["00", "11"], "book2": ["00", "01", "10"]}"#,
    );
    let doc = stdout_json(&qadder(&[
        "simulate",
        "--code",
        &format!("ghz-lift:{}", path.display()),
    ]));
    assert_eq!(doc["zero_error"], true);
    assert!((doc["rates"][0].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert!((doc["rates"][1].as_f64().unwrap() - 0.792_481_25).abs() < 1e-6);
}

#[test]
fn simulate_wrapped_code_flattens_errors() {
    let path = temp_file(
        "biased.json",
        r#"{"n": 1, "book1": ["0", "1"], "book2": ["0", "1"],
            "decoder": {"0": [0, 0], "1": [0, 1], "2": [1, 1]}}"#,
    );
    let doc = stdout_json(&qadder(&[
        "simulate",
        "--code",
        &format!("wrap:{}", path.display()),
    ]));
    assert!((doc["max_message_error"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((doc["average_error"].as_f64().unwrap() - 0.25).abs() < 1e-12);

    // the unwrapped classical code errs on exactly one message pair
    let classical = stdout_json(&qadder(&[
        "simulate",
        "--code",
        &format!("classical:{}", path.display()),
    ]));
    assert_eq!(classical["max_message_error"], 1.0);
    assert!((classical["average_error"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn simulate_rejects_malformed_code_file() {
    let path = temp_file("broken.json", r#"{"n": 2, "book1": ["00""#);
    let output = qadder(&[
        "simulate",
        "--code",
        &format!("classical:{}", path.display()),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let message = String::from_utf8_lossy(&output.stderr);
    assert!(message.contains("line"), "no line info in {message}");
}

#[test]
fn optimize_ghz_unitary_stays_under_the_cap() {
    let doc = stdout_json(&qadder(&[
        "optimize",
        "--scenario",
        "ghz",
        "--mode",
        "unitary",
        "--restarts",
        "2",
        "--budget",
        "500",
        "--seed",
        "42",
    ]));
    assert!(doc["best_value"].as_f64().unwrap() <= 2.5 + 1e-6);
}

#[test]
fn csv_formats_emit_flat_tables() {
    let region = qadder(&["region", "--scenario", "classical", "--format", "csv"]);
    let text = String::from_utf8(region.stdout).unwrap();
    assert!(text.starts_with("record,"));
    assert!(text.contains("constraint,1.00000000,1.00000000,1.50000000"));
    assert!(text.contains("vertex,1.00000000,0.500000000,"));

    let sim = qadder(&["simulate", "--code", "dense", "--format", "csv"]);
    let text = String::from_utf8(sim.stdout).unwrap();
    assert!(text.contains("zero_error,true"));

    let opt = qadder(&[
        "optimize",
        "--scenario",
        "2ebit",
        "--mode",
        "pauli",
        "--restarts",
        "1",
        "--budget",
        "200",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(opt.stdout).unwrap();
    assert!(text.contains("best_value,3.18872188"));
}

#[test]
fn classical_code_without_decoder_must_be_zero_error() {
    let ambiguous = temp_file(
        "ambiguous.json",
        r#"{"n": 1, "book1": ["0", "1"], "book2": ["0", "1"]}"#,
    );
    let output = qadder(&[
        "simulate",
        "--code",
        &format!("classical:{}", ambiguous.display()),
    ]);
    assert_eq!(output.status.code(), Some(2));

    // zero-error books decode through the inverse table without a decoder
    let ze = temp_file(
        "ze.json",
        r#"{"n": 1, "book1": ["0", "1"], "book2": ["0"]}"#,
    );
    let doc = stdout_json(&qadder(&[
        "simulate",
        "--code",
        &format!("classical:{}", ze.display()),
    ]));
    assert_eq!(doc["zero_error"], true);
}

#[test]
fn verify_passes_for_default_and_custom_seeds() {
    for args in [vec!["verify"], vec!["verify", "--seed", "7"]] {
        let output = qadder(&args);
        assert!(output.status.success(), "{args:?}");
        let text = String::from_utf8(output.stdout).unwrap();
        assert!(text.contains("schur_oracle"));
        assert!(text.contains("verification passed"));
    }
}

#[test]
fn verify_negative_control_fails() {
    let output = qadder(&["verify", "--corrupt-bell"]);
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("FAIL bell_invariance"));
}

#[test]
fn closed_stdout_pipe_exits_cleanly() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_qadder"))
        .args(["ratesum", "--max", "3000"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // read one chunk, then hang up like `head` would
    let mut stdout = child.stdout.take().unwrap();
    let mut chunk = [0u8; 256];
    let _ = stdout.read(&mut chunk).unwrap();
    drop(stdout);
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn help_exits_zero_and_missing_args_exit_two() {
    assert_eq!(qadder(&["--help"]).status.code(), Some(0));
    assert_eq!(qadder(&["region"]).status.code(), Some(2));
    assert_eq!(qadder(&["frobnicate"]).status.code(), Some(2));
}
