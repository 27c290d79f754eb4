//! End-to-end CLI contract: exit codes, deterministic JSON reports, report
//! schema, and the full default suite within its time budget.

use std::process::{Command, Output};
use std::time::Instant;

fn nccb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nccb"))
        .args(args)
        .output()
        .expect("spawn nccb")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn verify_capelli_passes_with_exit_zero() {
    let out = nccb(&["verify", "capelli", "--n", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    assert!(text.contains("overall: pass"));
}

#[test]
fn paths_count_matches_catalan() {
    let out = nccb(&["paths", "--len", "3", "--count"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "5");
}

#[test]
fn verification_failure_exits_one() {
    // a kernel truncated below n drops quantum corrections: an honest failure
    let out = nccb(&["verify", "oscillator", "--n", "2", "--trunc", "0"]);
    assert_eq!(exit_code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(text.contains("first discrepancy"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "no_such_identity"][..],
        &["suite", "--n-max", "9"][..],
        &["verify", "capelli", "--not-a-flag"][..],
        &["paths", "--len", "0"][..],
        &["cbh", "--order", "6", "--f", "1,oops"][..],
        &["verify", "oscillator", "--n", "3", "--m", "2"][..],
    ] {
        let out = nccb(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

#[test]
fn json_report_is_deterministic_without_timestamp() {
    let args = [
        "verify",
        "grassmann",
        "--n",
        "2",
        "--m",
        "3",
        "--s-dim",
        "1",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let first = nccb(&args);
    let second = nccb(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");

    let value: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid JSON");
    assert!(value.get("version").is_some());
    assert!(value.get("config").is_some());
    assert!(value.get("overall").is_some());
    assert!(value.get("timestamp").is_none());
    let results = value["results"].as_array().expect("results array");
    assert!(!results.is_empty());
    for r in results {
        for field in [
            "identity",
            "params",
            "status",
            "lhs_terms",
            "rhs_terms",
            "first_discrepancy",
            "elapsed_ms",
        ] {
            assert!(r.get(field).is_some(), "missing field {field}");
        }
        assert_eq!(r["status"], "pass");
        assert_eq!(r["elapsed_ms"], 0, "timings suppressed with --no-timestamp");
    }
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = std::env::temp_dir().join("nccb-out-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = nccb(&[
        "verify",
        "capelli",
        "--n",
        "1",
        "--format",
        "json",
        "--no-timestamp",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty(), "report goes to the file, not stdout");
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["overall"], "pass");
}

#[test]
fn timestamp_present_by_default() {
    let out = nccb(&["verify", "capelli", "--n", "1", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert!(value.get("timestamp").is_some());
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("nccb-config-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("suite.conf");
    std::fs::write(
        &path,
        "identities = capelli\nn-max = 2  # comment\npaths-len = 4\n",
    )
    .unwrap();
    let out = nccb(&[
        "suite",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["config"]["identities"], "capelli");
    assert_eq!(value["config"]["n_max"], "2");
    // an explicit flag overrides the file value
    let out = nccb(&[
        "suite",
        "--config",
        path.to_str().unwrap(),
        "--n-max",
        "1",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["config"]["n_max"], "1");
}

/// Criterion 10: the full default suite passes, emits a deterministic JSON
/// report, and finishes within the ten-minute budget.
#[test]
fn criterion_10_full_default_suite() {
    let started = Instant::now();
    let out = nccb(&["suite", "--format", "json", "--no-timestamp"]);
    let elapsed = started.elapsed();
    assert_eq!(
        exit_code(&out),
        0,
        "suite failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(value["overall"], "pass");
    assert!(
        elapsed.as_secs() < 600,
        "suite took {:?}, budget is 10 minutes",
        elapsed
    );
    println!(
        "PASS criterion 10: full default suite, {} checks in {:.1} s",
        value["results"].as_array().map(|a| a.len()).unwrap_or(0),
        elapsed.as_secs_f64()
    );
}
