use std::process::{Command, Output};

use serde_json::Value;

fn jratio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jratio")).args(args).output().expect("run jratio")
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn constant_reports_all_four_constants() {
    let out = jratio(&["constant", "--a", "0.6"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let c = &doc["constants"];
    assert_eq!(c["c_main"].as_f64().unwrap(), 1.56347377031137);
    assert_eq!(c["c_case12"].as_f64().unwrap(), 1.42857142857143);
    assert_eq!(c["c_ball"].as_f64().unwrap(), 1.6);
    assert_eq!(c["c_go"].as_f64().unwrap(), 2.0);
    assert_eq!(doc["manifest"]["command"], "constant");
}

#[test]
fn constant_at_zero_is_one() {
    let doc = json(&jratio(&["constant", "--a", "0", "--no-manifest"]));
    assert_eq!(doc["constants"]["c_main"].as_f64().unwrap(), 1.0);
    assert!(doc.get("manifest").is_none());
}

#[test]
fn parameter_outside_the_disk_is_a_usage_error() {
    for a in ["1.2", "0.8+0.6i", "-1", "nan", "0.3+"] {
        let out = jratio(&["constant", "--a", a]);
        assert_eq!(out.status.code(), Some(2), "a = {a}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}

#[test]
fn estimate_rejects_zero_parameter() {
    let out = jratio(&["estimate", "--a", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("jratio constant --a 0"));
}

#[test]
fn estimate_with_extremal_check() {
    let out = jratio(&["estimate", "--a", "-0.3+0.4i", "--verify-extremal", "--no-manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["converged"], true);
    assert!(doc["extremal"]["deviation"].as_f64().unwrap() <= 1e-12);
    let report = &doc["report"];
    assert_eq!(report["kind"]["map"], "punctured_automorphism");
    assert!(report["gap"].as_f64().unwrap().abs() <= 1e-9);
}

#[test]
fn unreachable_tolerance_exits_three() {
    let out = jratio(&[
        "estimate", "--a", "0.6", "--grid-n", "8", "--refine-iters", "1", "--refine-starts", "1",
        "--tol", "1e-15", "--no-manifest",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["converged"], false);
}

#[test]
fn verify_passes_and_detects_a_corrupted_check() {
    let ok = jratio(&["verify", "--samples", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verify"]["all_passed"], true);

    let bad = jratio(&["verify", "--samples", "100", "--corrupt-le1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("counterexample"));

    assert_eq!(jratio(&["verify", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn power_table_near_the_circle() {
    let out = jratio(&["power", "--a", "0.99i", "--n-max", "1", "--no-manifest"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,estimate,argmax_z,argmax_w");
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let estimate: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(estimate <= 1.99 + 1e-9);
    }
}

#[test]
fn power_table_at_zero_is_one() {
    let out = jratio(&["power", "--a", "0", "--n-max", "2", "--grid-n", "24", "--no-manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let estimate: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((estimate - 1.0).abs() <= 2e-3, "{line}");
    }
}

#[test]
fn q2_validates_and_writes_manifest_sidecar() {
    assert_eq!(jratio(&["q2", "--m-max", "1"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("jratio-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q2.csv");
    let out = jratio(&["q2", "--m-max", "4", "--grid-n", "24", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("m,a,estimate\n2,"));
    let sidecar = std::fs::read_to_string(dir.join("q2.csv.manifest.json")).unwrap();
    let manifest: Value = serde_json::from_str(&sidecar).unwrap();
    assert_eq!(manifest["command"], "q2");
    assert_eq!(manifest["parameters"]["m_max"], "4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_manifest_goes_to_stderr_without_output() {
    let out = jratio(&["q2", "--m-max", "2", "--grid-n", "16"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    let line = stderr.lines().find_map(|l| l.strip_prefix("manifest: ")).unwrap();
    let manifest: Value = serde_json::from_str(line).unwrap();
    assert_eq!(manifest["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn audit_reports_and_validates() {
    assert_eq!(jratio(&["audit", "--a", "0.6", "--samples", "0"]).status.code(), Some(2));
    let out = jratio(&["audit", "--a", "0.6", "--samples", "20000", "--seed", "3", "--no-manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let audit = &json(&out)["audit"];
    assert_eq!(audit["violations"], 0);
    assert!(audit["max_ratio"].as_f64().unwrap() <= audit["bound"].as_f64().unwrap());
}
