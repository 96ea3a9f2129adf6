use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::tempdir;

fn aybe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aybe"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = aybe().args(args).output().expect("binary should run");
    let stdout = String::from_utf8_lossy(&out.stdout);
    Run {
        code: out.status.code().expect("exit code"),
        report: serde_json::from_str(&stdout).unwrap_or(Value::Null),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_matches_golden_file() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    let r = run(["construct", "--n", "2", "--m", "1", "--lambda", "2,1", "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["verdict"], "pass");
    assert_eq!(r.report["details"]["mode"], "distinct");
    assert_eq!(fs::read_to_string(out).unwrap(), fs::read_to_string(fixture("m1_n2.json")).unwrap());
}

#[test]
fn construct_equal_lambda_is_degenerate() {
    let r = run(["construct", "--n", "2", "--m", "1", "--lambda", "1,1"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.report["verdict"], "degenerate");
    assert_eq!(r.report["details"]["gram_rank"], 0);
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(run(["construct", "--n", "4", "--m", "2", "--lambda", "0,1,2,3", "--out", s(&out)]).code, 0);
    let r = run(["verify", s(&out)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["passed"], true);
}

#[test]
fn construct_rejects_bad_input() {
    for args in [
        &["construct", "--n", "2", "--lambda", "0.5,1"][..],
        &["construct", "--n", "4", "--m", "3", "--lambda", "0,1,2,3"],
        &["construct", "--n", "3", "--lambda", "0,1"],
        &["construct", "--lambda", "0,1"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.report.is_null());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn verify_examples() {
    assert_eq!(run(["verify", s(&fixture("m1_n2.json"))]).code, 0);
    assert_eq!(run(["verify", s(&fixture("zero_n3.json"))]).code, 0);
    assert_eq!(run(["verify", s(&fixture("family_n2.json"))]).code, 0);

    let r = run(["verify", s(&fixture("missing_partner.json"))]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["verdict"], "fail");
    let skew = r.report["details"]["skew_violations"].as_array().unwrap();
    assert!(!skew.is_empty());
    assert_eq!(skew[0]["index"], serde_json::json!([0, 1, 0, 1]));
}

#[test]
fn verify_malformed_file_is_usage_error() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{ "n": 2, "entries": [ { "upper": [0, 2], "lower": [0, 0], "value": "1" } ] }"#).unwrap();
    assert_eq!(run(["verify", s(&bad)]).code, 2);
    fs::write(&bad, r#"{ "n": 2, "entries": [ { "upper": [0, 1], "lower": [0, 0], "value": "0.5" } ] }"#).unwrap();
    assert_eq!(run(["verify", s(&bad)]).code, 2);
    assert_eq!(run(["verify", s(&dir.path().join("missing.json"))]).code, 2);
}

#[test]
fn closed_form_examples() {
    let dir = tempdir().unwrap();
    let gram = dir.path().join("gram.json");
    assert_eq!(run(["construct", "--n", "3", "--lambda", "0,1,2", "--out", s(&gram)]).code, 0);
    let r = run(["closed-form", "--variant", "m1", "--n", "3", "--lambda", "0,1,2", "--compare", s(&gram)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["diffs"], serde_json::json!([]));

    let block = dir.path().join("block.json");
    let r = run(["closed-form", "--variant", "block", "--n", "4", "--m", "2", "--lambda", "1,1,0,0", "--out", s(&block)]);
    assert_eq!(r.code, 0);
    assert_eq!(run(["verify", s(&block)]).code, 0);

    assert_eq!(run(["closed-form", "--variant", "m1", "--n", "2", "--lambda", "1,1"]).code, 2);
    assert_eq!(run(["closed-form", "--variant", "nope", "--n", "2", "--lambda", "1,2"]).code, 2);
}

#[test]
fn closed_form_compare_reports_diffs() {
    let r = run(["closed-form", "--variant", "m1", "--n", "2", "--lambda", "1,2", "--compare", s(&fixture("m1_n2.json"))]);
    assert_eq!(r.code, 1);
    assert!(!r.report["details"]["diffs"].as_array().unwrap().is_empty());
}

#[test]
fn cocycle_examples() {
    for (n, m, lambda) in [("2", "1", "2,1"), ("3", "1", "1,1,1"), ("4", "2", "3,-1/2,0,7")] {
        let r = run(["cocycle", "--n", n, "--m", m, "--lambda", lambda]);
        assert_eq!(r.code, 0, "{n} {m} {lambda}");
        assert_eq!(r.report["details"]["violations"], serde_json::json!([]));
    }
}

#[test]
fn bracket_examples() {
    let dir = tempdir().unwrap();
    let r3 = dir.path().join("r3.json");
    assert_eq!(run(["closed-form", "--variant", "m1", "--n", "3", "--lambda", "0,1,2", "--out", s(&r3)]).code, 0);
    let r = run(["bracket", s(&r3), "--m-size", "1", "--check-jacobi"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["jacobi_violations"], serde_json::json!([]));

    let out = dir.path().join("b.json");
    let r = run(["bracket", s(&fixture("zero_n3.json")), "--out", s(&out)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["zero"], true);
    let file: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(file["table"].as_array().unwrap().iter().all(|e| e["poly"] == serde_json::json!([])));

    let r = run(["bracket", s(&fixture("family_n2.json")), "--m-size", "2", "--check-jacobi"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["generators"], 8);
}

#[test]
fn bracket_of_n2_solution_file() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("b.json");
    assert_eq!(run(["bracket", s(&fixture("m1_n2.json")), "--out", s(&out)]).code, 0);
    let file: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    let entry = &file["table"][0];
    assert_eq!((entry["u"].as_u64(), entry["v"].as_u64()), (Some(0), Some(1)));
    // −(x0 − x1)²
    let terms: Vec<(Value, &str)> = entry["poly"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["exps"].clone(), t["coeff"].as_str().unwrap()))
        .collect();
    assert_eq!(
        terms,
        vec![
            (serde_json::json!([2, 0]), "-1"),
            (serde_json::json!([1, 1]), "2"),
            (serde_json::json!([0, 2]), "-1"),
        ]
    );
}

#[test]
fn bracket_rejects_non_skew_tensor() {
    let r = run(["bracket", s(&fixture("missing_partner.json")), "--check-jacobi"]);
    assert_eq!(r.code, 1);
    assert!(r.report["details"]["reason"].as_str().unwrap().contains("skew"));
}

#[test]
fn bracket_2m_reports_comparison() {
    let r = run(["bracket-2m", "--n", "4", "--lambda", "0,1,2,3"]);
    assert_eq!(r.report["details"]["derived_jacobi_violations"], 0);
    let verdict = r.report["details"]["comparison"]["verdict"].as_str().unwrap();
    assert_eq!(r.code, if verdict == "match" { 0 } else { 1 });
    assert_eq!(run(["bracket-2m", "--n", "3", "--lambda", "0,1,2"]).code, 2);
}

#[test]
fn transform_examples() {
    let dir = tempdir().unwrap();
    let src = fixture("m1_n2.json");

    let id = dir.path().join("id.json");
    fs::write(&id, r#"[["1", "0"], [0, 1]]"#).unwrap();
    let out = dir.path().join("t.json");
    assert_eq!(run(["transform", s(&src), "--g", s(&id), "--out", s(&out)]).code, 0);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&src).unwrap());

    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    assert_eq!(run(["transform", s(&src), "--transpose-dual", "--out", s(&once)]).code, 0);
    assert_eq!(run(["transform", s(&once), "--transpose-dual", "--out", s(&twice)]).code, 0);
    assert_eq!(fs::read(&twice).unwrap(), fs::read(&src).unwrap());
    assert_ne!(fs::read(&once).unwrap(), fs::read(&src).unwrap());

    let moved = dir.path().join("moved.json");
    let r = run(["transform", s(&src), "--random-g", "--seed", "11", "--out", s(&moved)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["details"]["verification"]["passed"], true);
    assert_eq!(run(["verify", s(&moved)]).code, 0);
}

#[test]
fn transform_singular_and_bad_g() {
    let dir = tempdir().unwrap();
    let src = fixture("m1_n2.json");
    let g = dir.path().join("g.json");
    fs::write(&g, r#"[["1", "2"], ["2", "4"]]"#).unwrap();
    let r = run(["transform", s(&src), "--g", s(&g)]);
    assert_eq!(r.code, 3);
    assert_eq!(r.report["verdict"], "degenerate");

    fs::write(&g, r#"[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]"#).unwrap();
    assert_eq!(run(["transform", s(&src), "--g", s(&g)]).code, 2);
    fs::write(&g, r#"[[1.5, 0], [0, 1]]"#).unwrap();
    assert_eq!(run(["transform", s(&src), "--g", s(&g)]).code, 2);
    assert_eq!(run(["transform", s(&src), "--g", s(&g), "--transpose-dual"]).code, 2);
    assert_eq!(run(["transform", s(&src)]).code, 2);
}

#[test]
fn report_flag_writes_file_and_reports_are_stable() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["cocycle", "--n", "4", "--m", "2", "--lambda", "1,1,0,0"];
    for path in [&a, &b] {
        let out = aybe().args(args).args(["--report", s(path)]).output().unwrap();
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let strip = |p: &Path| {
        let mut v: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
        assert!(v["timing_ms"].is_u64());
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn negative_lambda_values_parse() {
    let r = run(["construct", "--n", "2", "--lambda=-1,1/2"]);
    assert_eq!(r.code, 0);
    let r = run(["construct", "--n", "2", "--lambda", "-3,4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["inputs"]["lambda"], "-3,4");
}
