use std::process::{Command, Output};

use serde_json::Value;

fn orbitforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitforge"))
        .args(args)
        .env_remove("ORBITFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = orbitforge(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is error JSON")
}

#[test]
fn table_e13_json_and_csv() {
    let rows = json_out(&["table-e13", "--format", "json"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[0]["group"], "O(1,3)");
    assert_eq!(rows[13]["group"], "O(1)×ℝ>0_s");

    let out = orbitforge(&["table-e13", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,params,constraints"));
    assert_eq!(lines.count(), 14);
}

#[test]
fn vertical_line_label() {
    let v = json_out(&["classify-adjoint", "--group", "affine:1", "--element", r#"{"omega":[["1"]],"v":["0"]}"#]);
    // every (1, v) shares the label of (1, 0)
    let w = json_out(&["classify-adjoint", "--group", "affine:1", "--element", r#"{"omega":[[1]],"v":["-3/2"]}"#]);
    assert_eq!(v["label"], w["label"]);
    assert_eq!(v["label"]["p"], "affine-zero");
    let origin = json_out(&["classify-adjoint", "--group", "affine:1", "--element", r#"{"omega":[[0]],"v":[0]}"#]);
    assert_ne!(v["label"], origin["label"]);
}

#[test]
fn e13_rows_are_reported() {
    let v = json_out(&[
        "classify-delta",
        "--group",
        "poincare:1,3",
        "--element",
        r#"{"omega":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],"p":[1,0,0,1]}"#,
    ]);
    assert_eq!(v["e13_row"]["index"], 13);
}

#[test]
fn bijection_pair_round_trips() {
    let pair = json_out(&[
        "bijection-pair",
        "--group",
        "poincare:1,2",
        "--element",
        r#"{"omega":[[0,1,0],[1,0,0],[0,0,0]],"v":[0,0,"1/2"]}"#,
    ]);
    assert_eq!(pair["input"], "adjoint");
    let coadjoint = serde_json::to_string(&pair["coadjoint"]).unwrap();
    let c = json_out(&["classify-coadjoint", "--group", "poincare:1,2", "--element", &coadjoint]);
    assert_eq!(c["label"], pair["label"]);

    // the emitted coadjoint element maps back into the same orbit
    let back = json_out(&["bijection-pair", "--group", "poincare:1,2", "--element", &coadjoint]);
    assert_eq!(back["input"], "coadjoint");
    assert_eq!(back["label"], pair["label"]);
    let adjoint = serde_json::to_string(&back["adjoint"]).unwrap();
    let a = json_out(&["classify-adjoint", "--group", "poincare:1,2", "--element", &adjoint]);
    assert_eq!(a["label"], pair["label"]);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "all", "--group", "poincare:1,1", "--trials", "100", "--seed", "7"];
    let out = orbitforge(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 11);
    assert_eq!(orbitforge(&args).stdout, out.stdout);

    let with_env = Command::new(env!("CARGO_BIN_EXE_orbitforge"))
        .args(["verify", "--suite", "zigzag", "--group", "affine:2", "--trials", "5"])
        .env("ORBITFORGE_SEED", "7")
        .output()
        .unwrap();
    let explicit = orbitforge(&["verify", "--suite", "zigzag", "--group", "affine:2", "--trials", "5", "--seed", "7"]);
    assert!(with_env.status.success());
    assert_eq!(with_env.stdout, explicit.stdout);
}

#[test]
fn verify_csv_summary() {
    let out =
        orbitforge(&["verify", "--suite", "extension", "--group", "affine:3", "--trials", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("extension,affine:3,10,0,0,PASS"));
}

#[test]
fn file_input() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("null_rotation.json");
    std::fs::write(&path, r#"{"omega":[[0,1,-1],[-1,0,0],[-1,0,0]]}"#).unwrap();
    let path = path.to_str().unwrap();
    let flag = json_out(&["flag", "--group", "poincare:2,1", "--file", path]);
    assert_eq!(flag["kernel_dim"], 1);
    assert_eq!(flag["steps"][0]["power"], 2);
    let forms = json_out(&["quotient-forms", "--group", "poincare:2,1", "--file", path, "--step", "0"]);
    assert_eq!(forms[0]["symmetry"], "symmetric");
    assert_eq!(forms[0]["signature"], serde_json::json!([0, 1]));
}

#[test]
fn hierarchy_leaves() {
    let h = json_out(&["hierarchy", "--group", "affine:3"]);
    let leaves: Vec<&str> = h["leaves"].as_array().unwrap().iter().map(|l| l["leaf"].as_str().unwrap()).collect();
    assert_eq!(leaves, ["gl", "gl", "aff1"]);
}

#[test]
fn certificate_output() {
    let cert =
        json_out(&["certificate", "--group", "poincare:1,1", "--element", r#"{"omega":[[0,1],[1,0]],"v":[1,0]}"#]);
    assert_eq!(cert["pseudo_equivariant"], false);
    assert!(!cert["links"].as_array().unwrap().is_empty());
}

#[test]
fn domain_errors_exit_1() {
    let out = orbitforge(&["classify-adjoint", "--group", "affine:2", "--element", "{not json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "parse");

    let out = orbitforge(&[
        "classify-adjoint",
        "--group",
        "poincare:2,2",
        "--element",
        r#"{"omega":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],"v":[0,0,0,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "unsupported-leaf");

    let out =
        orbitforge(&["classify-delta", "--group", "affine:2", "--element", r#"{"omega":[[1,0],[0,1]],"p":[1,0]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "not-in-delta");

    let out = orbitforge(&["verify", "--suite", "nonsense", "--group", "affine:2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["error"], "unknown-suite");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["classify-adjoint", "--group", "affine:1"],
        &["classify-adjoint", "--group", "euclid:3", "--element", "{}"],
        &["classify-adjoint", "--group", "affine:1", "--element", "{}", "--format", "csv"],
        &["table-e13", "--format", "yaml"],
    ] {
        assert_eq!(orbitforge(args).status.code(), Some(2), "{args:?}");
    }
}
