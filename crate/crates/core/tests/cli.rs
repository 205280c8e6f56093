use std::process::{Command, Output};

use serde_json::Value;

fn jetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetlab")).args(args).env_remove("JETLAB_THREADS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_text() {
    let out = jetlab(&["generate", "--rows", "2", "--cols", "2", "--rank", "1", "--jets", "1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "x_1_1_0*x_2_2_0 - x_1_2_0*x_2_1_0\nx_1_1_0*x_2_2_1 - x_1_2_0*x_2_1_1 - x_2_1_0*x_1_2_1 + x_2_2_0*x_1_1_1\n"
    );
}

#[test]
fn generate_json_has_schema_and_config() {
    let out = jetlab(&["generate", "--rows", "3", "--cols", "3", "--jets", "1"]);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["config"]["command"]["subcommand"], "generate");
    assert_eq!(doc["config"]["command"]["rows"], 3);
    assert_eq!(doc["report"]["generators"].as_array().unwrap().len(), 18);
    assert_eq!(doc["report"]["variables"].as_array().unwrap().len(), 18);
    assert_eq!(doc["report"]["variables"][0], "x_1_1_0");
}

#[test]
fn predict_rank_one() {
    let doc = json(&jetlab(&["predict", "--rows", "5", "--cols", "3", "--jets", "3"]));
    assert_eq!(doc["report"]["count"], 3);
    assert_eq!(doc["report"]["dims"], serde_json::json!([28, 29, 30]));
    assert_eq!(doc["report"]["applicable"], "Applies");
    assert_eq!(doc["report"]["lct"]["lct"], "15/2");
    assert!(doc["report"]["certificate"]["holds"].as_bool().unwrap());
}

#[test]
fn predict_square_case_has_no_prediction() {
    let doc = json(&jetlab(&["predict", "--rows", "3", "--cols", "3", "--jets", "1"]));
    assert_eq!(doc["report"]["applicable"], "HypothesesFail");
    assert_eq!(doc["report"]["odd_jets"]["verdict"], "NoConclusion");
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "--suite", "origin-fiber", "--rows", "2", "--cols", "2", "--rank", "1", "--jets", "2"],
        vec!["check", "--suite", "origin-fiber-count", "--jets", "2", "--workers", "2"],
        vec!["check", "--suite", "formulas"],
        vec!["check", "--suite", "minimal-primes"],
    ] {
        let out = jetlab(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["report"]["pass"], true, "{args:?}");
    }
}

#[test]
fn usage_and_resource_errors_exit_two() {
    assert_eq!(jetlab(&["generate", "--rows", "2", "--cols", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(jetlab(&[]).status.code(), Some(2));
    assert_eq!(jetlab(&["generate", "--rows", "2", "--cols", "2", "--rank", "3"]).status.code(), Some(2));
    assert_eq!(jetlab(&["check", "--suite", "origin-fiber", "--jets", "1"]).status.code(), Some(2));
    assert_eq!(jetlab(&["check", "--suite", "minimal-primes", "--budget", "2"]).status.code(), Some(0));
    assert_eq!(
        jetlab(&["count", "--rows", "3", "--cols", "3", "--jets", "1", "--mode", "exact", "--primes", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_overrun_is_reported_not_refuted() {
    let doc = json(&jetlab(&["check", "--suite", "minimal-primes", "--budget", "2"]));
    assert_eq!(doc["report"]["pass"], false);
    assert_eq!(doc["report"]["checks"][3]["status"], "budget_exceeded");
}

#[test]
fn count_is_reproducible() {
    let args = [
        "count", "--rows", "2", "--cols", "2", "--jets", "1", "--mode", "monte-carlo", "--samples", "20000", "--seed", "5",
        "--workers", "2",
    ];
    let a = jetlab(&args);
    let b = jetlab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["report"]["label"], "EVIDENCE");
    assert_eq!(doc["config"]["command"]["workers"], 2);
}

#[test]
fn exact_count_and_dimension_estimate() {
    let doc = json(&jetlab(&["count", "--rows", "2", "--cols", "2", "--jets", "0", "--workers", "1"]));
    let counts = doc["report"]["counts"].as_array().unwrap();
    assert_eq!(counts[0]["count"]["exact"], 10);
    assert_eq!(counts[1]["count"]["exact"], 33);
    assert_eq!(doc["report"]["dim_estimate"]["rounded"], 3);
}

#[test]
fn thread_variable_sets_workers() {
    let out = Command::new(env!("CARGO_BIN_EXE_jetlab"))
        .args(["count", "--rows", "2", "--cols", "2", "--jets", "0"])
        .env("JETLAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["command"]["workers"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_jetlab"))
        .args(["count", "--rows", "2", "--cols", "2", "--jets", "0", "--workers", "2"])
        .env("JETLAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["command"]["workers"], 2);
}

#[test]
fn contact_from_file_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("blowup.json");
    std::fs::write(&input, r#"{"n": 1, "k": [1], "a": [[1]], "families": [], "orders": [3]}"#).unwrap();
    let report = dir.path().join("out.json");
    let out = jetlab(&["contact", "--input", input.to_str().unwrap(), "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(doc["report"], serde_json::json!({ "value": 6, "nu": [3] }));

    std::fs::write(&input, r#"{"n": 2, "k": [0, 0], "a": [[1, 0]], "families": [[1, 3]], "orders": [1]}"#).unwrap();
    assert_eq!(jetlab(&["contact", "--input", input.to_str().unwrap()]).status.code(), Some(2));

    std::fs::write(&input, r#"{"n": 1, "k": [0], "a": [[0]], "families": [], "orders": [2]}"#).unwrap();
    let doc = json(&jetlab(&["contact", "--input", input.to_str().unwrap()]));
    assert_eq!(doc["report"], serde_json::json!({ "value": "infeasible", "nu": [] }));
}

#[test]
fn library_entry_point() {
    let code = jetlab::cli::run(["jetlab", "predict", "--rows", "4", "--cols", "3", "--jets", "0", "--format", "text"]);
    assert_eq!(code, 0);
}
