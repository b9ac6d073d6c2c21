use std::process::{Command, Output};

fn qmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmix")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn fermionic_run_passes_with_known_values() {
    let out = qmix(&["haagerup-itoh", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let s2s2 = report["scalars"]["s2s2"].as_f64().unwrap();
    assert!((s2s2 - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(report["config"]["command"], "haagerup-itoh");
}

#[test]
fn randomized_command_without_seed_is_a_usage_error() {
    let out = qmix(&["mixing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));
}

#[test]
fn unknown_flags_and_subcommands_exit_2() {
    assert_eq!(qmix(&["mixing", "--colour", "3"]).status.code(), Some(2));
    assert_eq!(qmix(&["bogus"]).status.code(), Some(2));
    assert_eq!(qmix(&[]).status.code(), Some(2));
}

#[test]
fn unknown_config_keys_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"command":"cz-extremal","n":4,"colour":1}"#).unwrap();
    let out = qmix(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"command":"mixing","n":4,"m":2,"trials":3}"#).unwrap();
    let out = qmix(&["mixing", "--config", path.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 3);
    assert_eq!(report["config"]["seed"], 5);

    let mismatch = qmix(&["lift", "--config", path.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn csv_output_goes_to_the_requested_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = qmix(&["cz-extremal", "--n", "6", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("kind,index,name,value,tolerance"));
    assert!(lines.any(|l| l.starts_with("verdict,0,")));
}

#[test]
fn unwritable_output_path_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let out = qmix(&["cz-extremal", "--n", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("report.json"));
}

#[test]
fn failing_verdicts_exit_1() {
    // Zero tolerance on identities that only hold up to rounding.
    let out = qmix(&["haagerup-itoh", "--n", "2", "--tol", "0", "--restarts", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["verdicts"].as_array().unwrap().iter().any(|v| v["pass"] == false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}
