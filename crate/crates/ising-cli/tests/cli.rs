use serde_json::Value;
use std::process::{Command, Output};

fn ising(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ising"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = ising(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn singularities_of_chi3_include_known_points() {
    let v = json_out(&["singularities", "--n", "3"]);
    assert_eq!(v["schema"], "ising-exact/1");
    let ws: Vec<f64> = v["singularities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["re"].as_str().unwrap().parse().unwrap())
        .collect();
    assert!(ws.iter().any(|w| (w + 0.5).abs() < 1e-30));
    assert!(ws.iter().any(|w| (w - 1.0).abs() < 1e-30));
}

#[test]
fn one_particle_series_starts_at_one() {
    let v = json_out(&["formfactor", "--n", "1", "--N", "0", "--order", "6"]);
    assert_eq!(v["offset"], "0");
    assert_eq!(v["order"], 6);
    assert_eq!(v["coeffs"][0], "1");
    assert_eq!(v["coeffs"][1], "1/4");
}

#[test]
fn series_output_feeds_ode_fit() {
    let dir = std::env::temp_dir().join(format!("ising-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f1.json");
    let out = ising(&["formfactor", "--n", "1", "--N", "0", "--order", "40"]);
    std::fs::write(&path, &out.stdout).unwrap();
    let v = json_out(&[
        "ode-fit",
        "--input",
        path.to_str().unwrap(),
        "--max-order",
        "3",
        "--max-degree",
        "3",
        "--lift",
        "2",
    ]);
    assert_eq!(v["operator"]["order"], 2);
    assert_eq!(v["annihilation"]["ok"], true);
    // f^(1)_{0,0} = ₂F₁(1/2,1/2;1;t): t(t−1)f″ + (2t−1)f′ + f/4 = 0
    let want = serde_json::json!([["1/4", "0", "0"], ["-1", "2", "0"], ["0", "-1", "1"]]);
    assert_eq!(v["rational_operator"]["coeffs"], want);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn every_value_carries_its_precision() {
    let v = json_out(&[
        "--precision",
        "200",
        "chi",
        "--kind",
        "diag",
        "--n",
        "2",
        "--t",
        "0.3",
    ]);
    let r = &v["results"][0];
    assert_eq!(r["value"]["precision_bits"], 200);
    assert_eq!(r["t"]["precision_bits"], 200);
    // χ_d^(2) = t/(4(1−t))
    let x: f64 = r["value"]["value"].as_str().unwrap().parse().unwrap();
    assert!((x - 0.3 / 2.8).abs() < 1e-15);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "correlate",
        "--N",
        "1,2",
        "--t",
        "0.25",
        "--output-format",
        "csv",
    ];
    let a = ising(&args);
    let b = ising(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("kind,N,kv,kh,side,value,precision_bits\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(ising(&["chi", "--kind", "bulk"]).status.code(), Some(2));
    assert_eq!(
        ising(&["correlate", "--N", "1", "--t", "abc"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ising(&["--precision", "8", "amplitudes"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ising(&["acceptance", "--only", "12"]).status.code(),
        Some(2)
    );
}

#[test]
fn computation_errors_exit_with_one_and_json() {
    let out = ising(&["chi", "--kind", "bulk", "--n", "5", "--t", "0.2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["schema"], "ising-exact/1");
    assert_eq!(err["error"]["kind"], "Cap");
    let out = ising(&[
        "ode-fit",
        "--input",
        "/nonexistent/s.json",
        "--max-order",
        "1",
        "--max-degree",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pvi_check_reports_zero_residual() {
    let v = json_out(&["pvi-check", "--N", "1", "--side", "above", "--order", "12"]);
    assert_eq!(v["residual_is_zero"], true);
    assert_eq!(v["first_nonzero"], Value::Null);
}

#[test]
fn amplitudes_csv() {
    let out = ising(&["amplitudes", "--output-format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let c1 = text.lines().find(|l| l.starts_with("C1,")).unwrap();
    assert!(c1.ends_with(",128"));
}

#[test]
fn acceptance_subset_passes() {
    let out = ising(&["acceptance", "--only", "7,8"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}
