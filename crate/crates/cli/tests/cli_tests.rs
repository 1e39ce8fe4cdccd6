//! End-to-end tests of the `cherednik` binary: exit codes, schema tags,
//! deterministic output, format switches, and the golden degree-4 matrix.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout(out)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

#[test]
fn reflections_json_schema_and_counts() {
    let out = run(&["reflections", "--family", "GL", "-n", "2", "-q", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["group"]["label"], "GL_2(F_3)");
    assert_eq!(v["group"]["reflections"], 20);
    assert_eq!(v["group"]["order"], 48);
    assert_eq!(v["reflections"].as_array().expect("array").len(), 20);
}

#[test]
fn output_is_deterministic_between_runs() {
    let args = [
        "form", "--family", "GL", "-n", "2", "-q", "2", "--max-degree", "4",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "stdout must be byte-identical");

    let args = ["verify-tables", "--scope", "GL0"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "stdout must be byte-identical");
}

#[test]
fn form_emits_golden_degree_four_matrix() {
    let out = run(&[
        "form", "--family", "GL", "-n", "2", "-q", "2", "--min-degree", "4",
        "--max-degree", "4",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let v = &lines[0];
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["degree"], 4);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["rank_generic"], 4);
    let entries: Vec<Vec<String>> =
        serde_json::from_value(v["entries"].clone()).expect("entry rows");
    assert_eq!(entries[0], ["c^3 + c^2", "c^3 + c^2", "c^3 + c^2", "c^3 + c^2", "0"]);
    assert_eq!(entries[2], ["c^3 + c^2", "0", "0", "0", "c^3 + c^2"]);
    let kernel: Vec<Vec<String>> =
        serde_json::from_value(v["kernel"]["vectors"].clone()).expect("kernel");
    assert_eq!(kernel, [["1", "0", "1", "0", "1"]]);
}

#[test]
fn form_csv_requires_a_single_degree() {
    let ok = run(&[
        "form", "--family", "GL", "-n", "2", "-q", "2", "--min-degree", "2",
        "--max-degree", "2", "--format", "csv",
    ]);
    assert!(ok.status.success(), "stderr: {}", stderr(&ok));
    let text = stdout(&ok);
    assert!(text.starts_with("basis,"), "header row: {text}");
    assert_eq!(text.lines().count(), 4, "header plus three rows");

    let bad = run(&[
        "form", "--family", "GL", "-n", "2", "-q", "2", "--min-degree", "1",
        "--max-degree", "2", "--format", "csv",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("single matrix"));
}

#[test]
fn bad_configuration_exits_two() {
    // q = 6 is not a prime power
    let out = run(&["reflections", "--family", "GL", "-n", "2", "-q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"), "stderr: {}", stderr(&out));

    // wrong number of parameter values for the group
    let out = run(&[
        "form", "--family", "GL", "-n", "2", "-q", "3", "--max-degree", "2",
        "--c", "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // symmetric family has no default degree cutoff
    let out = run(&["hilbert", "--family", "sym", "-n", "5", "-q", "3", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("max_degree"), "stderr: {}", stderr(&out));

    // malformed monomial
    let out = run(&["dunkl", "--family", "GL", "-n", "2", "-q", "2", "--monomial", "y3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hilbert_reports_series_and_bound() {
    let out = run(&["hilbert", "--family", "GL", "-n", "2", "-q", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["series"], serde_json::json!([1, 2, 3, 2, 1]));
    assert_eq!(v["factored"], "(1-z^3)(1-z^3)/(1-z)^2");
    assert_eq!(v["within_bound"], true);
    assert_eq!(v["reduced"], serde_json::json!([1]));
}

#[test]
fn dunkl_applies_operators_symbolically() {
    let out = run(&[
        "dunkl", "--family", "GL", "-n", "2", "-q", "2", "--monomial", "x1^2",
        "--y", "1",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    let applications = v["applications"].as_array().expect("applications");
    assert_eq!(applications.len(), 1);
    assert_eq!(applications[0]["y"], 1);
    assert_eq!(applications[0]["result"], "c*x1 + c*x2");
}

#[test]
fn verify_tables_scopes_and_formats() {
    let out = run(&["verify-tables", "--scope", "GL0"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["total"], 18);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["status"], "pass");

    let table = run(&["verify-tables", "--scope", "GL0", "--format", "table"]);
    assert!(table.status.success());
    assert!(stdout(&table).contains("[ok]"));

    let csv = run(&["verify-tables", "--scope", "GL0", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(2));
}

#[test]
fn dickson_command_reports_invariant_degrees() {
    let out = run(&["dickson", "-n", "2", "-q", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["degrees"], serde_json::json!([8, 6]));
    assert_eq!(v["l"]["degree"], 4);
}

#[test]
fn compare_h_reports_termwise_domination() {
    let out = run(&["compare-h", "--family", "GL", "-n", "2", "-q", "2"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["termwise_le"], true);
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("cherednik-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("reflections.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "reflections", "--family", "GL", "-n", "2", "-q", "2", "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).expect("file written");
    let v: serde_json::Value = serde_json::from_str(&text).expect("JSON");
    assert_eq!(v["group"]["label"], "GL_2(F_2)");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn orthogonal_conjecture_smallest_pair_matches() {
    let out = run(&["orthogonal-conjecture", "--pairs", "2,3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("JSON");
    assert_eq!(v["schema"], "cherednik-lab/1");
    assert_eq!(v["status"], "pass");
    let outcomes = v["outcomes"].as_array().expect("outcomes");
    assert_eq!(outcomes.len(), 2, "plus- and minus-type forms for n = 2");
    for o in outcomes {
        assert_eq!(o["matches"], true, "outcome: {o}");
    }
}
