//! End-to-end behavior of the binary: exit codes, config/flag precedence,
//! field-container round trips, and table output.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_alphamod")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn validate_default_smooth_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&[
        "--alpha",
        "0.5",
        "--dim",
        "1",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--out",
        tmp.path().to_str().unwrap(),
        "validate",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], serde_json::json!(true));
    assert_eq!(doc["kind"], serde_json::json!("smooth"));
    assert!(tmp.path().join("validate_smooth.json").exists());
}

#[test]
fn validate_alpha_zero_passes_and_rect_too() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&[
        "--alpha",
        "0",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--out",
        tmp.path().to_str().unwrap(),
        "validate",
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "--alpha",
        "0.5",
        "--covering",
        "rect",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--out",
        tmp.path().to_str().unwrap(),
        "validate",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(tmp.path().join("validate_rect.json")).unwrap())
            .unwrap();
    assert_eq!(doc["kind"], serde_json::json!("rect"));
    assert!(doc["shells"].as_array().unwrap().len() > 4);
}

#[test]
fn validate_with_tiny_support_constant_reports_gap_and_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("run.json");
    std::fs::write(
        &cfg_path,
        serde_json::json!({
            "grid": {"dim": 1, "half_period": 50.26548245743669, "samples_per_axis": 1024},
            "space": {"alpha": 0.7},
            "outer_c": 1.01,
            "out": tmp.path().to_str().unwrap(),
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["--config", cfg_path.to_str().unwrap(), "validate"]);
    assert_eq!(
        code(&out),
        1,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("covering gap"));
}

#[test]
fn bad_parameters_exit_two() {
    // p = 0 is outside (0, inf].
    let out = run(&["--p", "0", "norm"]);
    assert_eq!(code(&out), 2);
    // Unknown family.
    let out = run(&["--family", "nonesuch", "--grid-n", "1024", "norm"]);
    assert_eq!(code(&out), 2);
    // Missing field file.
    let out = run(&["norm", "--field", "/nonexistent/f.amfd"]);
    assert_eq!(code(&out), 2);
    // Lambda grid straddling 1.
    let out = run(&[
        "--family",
        "gaussian",
        "--lambda-min",
        "0.5",
        "--lambda-max",
        "2",
        "experiment",
        "scaling",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unresolvable_construction_exits_three() {
    // A modulated atom narrower than the frequency lattice.
    let out = run(&[
        "--family",
        "modulated_atom",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--lambda-max",
        "100000",
        "norm",
    ]);
    assert_eq!(
        code(&out),
        3,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn norm_field_roundtrip_through_container() {
    let tmp = tempfile::tempdir().unwrap();
    let field_path = tmp.path().join("f.amfd");
    let common = [
        "--alpha",
        "0.5",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--s",
        "0",
        "--p",
        "2",
        "--q",
        "2",
    ];
    let mut args: Vec<&str> = common.to_vec();
    args.extend([
        "--family",
        "gaussian",
        "norm",
        "--save-field",
        field_path.to_str().unwrap(),
    ]);
    let first = run(&args);
    assert_eq!(
        code(&first),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&first.stderr)
    );
    let doc1: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let mut args: Vec<&str> = common.to_vec();
    args.extend(["norm", "--field", field_path.to_str().unwrap()]);
    let second = run(&args);
    assert_eq!(code(&second), 0);
    let doc2: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
    let (a, b) = (
        doc1["norm"].as_f64().unwrap(),
        doc2["norm"].as_f64().unwrap(),
    );
    assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
    // The default-covering and bump-family norms stay inside the
    // equivalence bracket of the circular norm.
    let circ = doc1["circ_norm"].as_f64().unwrap();
    let ratio = a / circ;
    assert!(ratio > 1.0 / 16.0 && ratio < 16.0, "ratio {ratio}");
}

#[test]
fn norm_inf_exponents_accepted() {
    let out = run(&[
        "--family",
        "gaussian",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--p",
        "inf",
        "--q",
        "inf",
        "norm",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["space"]["p"], serde_json::json!("inf"));
    assert!(doc["norm"].as_f64().unwrap() > 0.0);
}

#[test]
fn besov_mode_via_alpha_one() {
    let out = run(&[
        "--family",
        "gaussian",
        "--grid-n",
        "1024",
        "--half-period",
        "50.26548245743669",
        "--alpha",
        "1",
        "--s",
        "0.5",
        "--p",
        "2",
        "--q",
        "1",
        "norm",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["covering"], serde_json::json!("dyadic"));
}

#[test]
fn flags_override_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("run.json");
    std::fs::write(
        &cfg_path,
        serde_json::json!({
            "space": {"alpha": 0.3},
            "grid": {"dim": 1, "half_period": 50.26548245743669, "samples_per_axis": 1024},
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&[
        "--config",
        cfg_path.to_str().unwrap(),
        "--alpha",
        "0.5",
        "--family",
        "gaussian",
        "norm",
    ]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["space"]["alpha"].as_f64().unwrap(), 0.5);
}

#[test]
fn experiment_writes_csv_and_json_named_by_hash() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&[
        "--alpha",
        "0.5",
        "--lambda-min",
        "4",
        "--lambda-max",
        "256",
        "--out",
        tmp.path().to_str().unwrap(),
        "experiment",
        "cardinality",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let names: Vec<String> = std::fs::read_dir(tmp.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    let json_name = names
        .iter()
        .find(|n| n.ends_with(".json"))
        .expect("json written");
    let csv_name = names
        .iter()
        .find(|n| n.ends_with(".csv"))
        .expect("csv written");
    assert!(json_name.starts_with("cardinality_"));
    assert_eq!(
        Path::new(json_name).file_stem().unwrap(),
        Path::new(csv_name).file_stem().unwrap()
    );
    let csv = std::fs::read_to_string(tmp.path().join(csv_name)).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("lambda,value"));
    assert!(lines.next().unwrap().starts_with("4,"));
}

#[test]
fn table_covers_grid_with_header() {
    let out = run(&["--alpha", "0.5", "table", "--points", "5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 25);
    assert!(lines[0].starts_with("inv_p,inv_q,region_s"));
}
