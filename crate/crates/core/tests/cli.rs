use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn jacflow(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jacflow")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jacflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const LEMNISCATIC: &str = r#"{"branch_points": [-1, 0, 1]}"#;

#[test]
fn periods_of_lemniscatic_file() {
    let path = scratch("lemniscatic.json");
    std::fs::write(&path, LEMNISCATIC).unwrap();
    let (code, out) = jacflow(&["periods", "--curve", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let report = json(&out);
    let tau = &report["outputs"]["riemann_relations"]["tau"][0][0];
    assert!(tau[0].as_f64().unwrap().abs() < 1e-8);
    assert!((tau[1].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert_eq!(report["inputs"]["curve"]["branch_points"].as_array().unwrap().len(), 3);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn coefficient_form_matches_branch_points() {
    // x⁵ − x in ascending coefficients.
    let (code, out) = jacflow(&["periods", "--curve", r#"{"coefficients": [0, -1, 0, 0, 0, 1]}"#]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["outputs"]["genus"], 2);
}

#[test]
fn input_errors_exit_with_code_two() {
    let (code, out) = jacflow(&["periods", "--curve", "{\"branch_points\": [0, 1"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "Parse");

    let (code, out) = jacflow(&["periods", "--curve", r#"{"branch_points": [0, 1, 1]}"#]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "CoincidentBranchPoints");

    let (code, out) = jacflow(&["periods", "--curve", "/nonexistent/curve.json"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "Io");

    let (code, out) = jacflow(&["flow", "--class", "[0,1]", "--s", "0.1", "--point", "[0.1,0.2,0.3,0.4]"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "DimensionMismatch");

    let (code, out) = jacflow(&["flow", "--class", "[0,1]"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "Usage");
}

#[test]
fn flow_examples() {
    let (code, out) = jacflow(&["flow", "--class", "[0,1]", "--s", "0.25", "--point", "[0,0]"]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out)["outputs"]["flowed"]["holonomy"],
        serde_json::json!([0.25, 0.0])
    );

    let (code, out) = jacflow(&[
        "flow",
        "--class",
        "[0,0,0,0]",
        "--s",
        "0.7",
        "--point",
        "[0.1,0.2,0.3,0.4]",
    ]);
    assert_eq!(code, 0);
    let report = json(&out);
    assert_eq!(report["outputs"]["note"], "separating: trivial flow");
    assert_eq!(
        report["outputs"]["flowed"]["holonomy"],
        serde_json::json!([0.1, 0.2, 0.3, 0.4])
    );

    let (code, out) = jacflow(&["flow", "--class", "[3,-2]", "--s", "1", "--point", "[0.1,0.6]"]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out)["outputs"]["flowed"]["holonomy"],
        serde_json::json!([0.1, 0.6])
    );
}

#[test]
fn flow_on_saved_lattice_in_all_charts() {
    let lattice = scratch("x5.lattice.json");
    let (code, _) = jacflow(&[
        "periods",
        "--curve",
        r#"{"branch_points": [0, 1, -1, [0, 1], [0, -1]]}"#,
        "--lattice-out",
        lattice.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, out) = jacflow(&[
        "flow",
        "--lattice",
        lattice.to_str().unwrap(),
        "--class",
        "[1,0,0,1]",
        "--s",
        "0.3",
        "--chart",
        "z",
        "--point",
        "[[0.1,0.2],[-0.3,0.05]]",
    ]);
    assert_eq!(code, 0, "{out}");
    let report = json(&out);
    let flowed = &report["outputs"]["flowed"];
    for chart in ["holonomy", "v", "z"] {
        assert!(flowed[chart].is_array(), "missing {chart}");
    }
    let commute = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "commuting_square")
        .unwrap();
    assert!(commute["defect"].as_f64().unwrap() < 1e-10);
    assert!(report["inputs"]["lattice"]["periods"].is_object());
}

#[test]
fn basis_completion_report() {
    let (code, out) = jacflow(&["basis", "--class", "[1,0]"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["outputs"]["matrix"], serde_json::json!([[0, 1], [-1, 0]]));
}

#[test]
fn gauge_demo_transcripts() {
    let (code, out) = jacflow(&["gauge-demo", "--seed", "3"]);
    assert_eq!(code, 0);
    let report = json(&out);
    let transcripts = report["outputs"]["transcripts"].as_array().unwrap();
    assert_eq!(transcripts.len(), 4);
    assert_eq!(transcripts[0]["pairing_table"], serde_json::json!([[0, 1], [-1, 0]]));
}

#[test]
fn verify_negative_controls_fail_as_expected() {
    let (code, out) = jacflow(&["verify", "--seed", "42", "--negative-controls"]);
    assert_eq!(code, 0);
    let report = json(&out);
    let controls: Vec<&Value> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["expect_failure"] == true)
        .collect();
    assert!(!controls.is_empty());
    for c in controls {
        assert_eq!(c["holds"], false);
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn verify_output_file_and_table() {
    let path = scratch("report.json");
    let (code, stdout) = jacflow(&["verify", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let mut a = json(&std::fs::read_to_string(&path).unwrap());
    let (_, b) = jacflow(&["verify"]);
    let mut b = json(&b);
    a["wall_time_ms"] = Value::Null;
    b["wall_time_ms"] = Value::Null;
    a["command"] = Value::Null;
    b["command"] = Value::Null;
    assert_eq!(a, b);

    let (code, table) = jacflow(&["verify", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(table
        .lines()
        .any(|l| l.starts_with("lemniscatic_tau_equals_i") && l.ends_with("PASS")));
}
