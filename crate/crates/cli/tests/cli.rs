use std::process::{Command, Output};

use serde_json::Value;

fn twisted(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisted")).args(args).env_remove("TWISTED_WORKERS").output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = twisted(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn hilbert_of_pa() {
    let v = json_of(&["hilbert", "--family", "Pa", "--params", "a=1", "--degree", "3"]);
    assert_eq!(v["schema"], "1");
    // a = 1 is the one non-regular member
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 6, 11]));
    let v = json_of(&["hilbert", "--family", "Pa", "--params", "a=2", "--degree", "4"]);
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 6, 10, 15]));
}

#[test]
fn classify_elliptic_tgh() {
    let v = json_of(&["classify", "--family", "Tgh", "--params", "g=0,h=1", "--field", "Fp:13"]);
    assert_eq!(v["type"], "EC");
    assert_eq!(v["subtag"], "minus-one");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["classify", "--family", "NoSuchFamily"][..],
        &["classify", "--family", "Tgh", "--params", "g=1"],
        &["hilbert", "--family", "Pa", "--params", "a=1", "--field", "Fp:3"],
        &["sklyanin", "--abc", "1,2"],
        &["classify"],
        &["verify-suite", "--suite", "nonexistent"],
        &["classify", "--in", "/nonexistent/file.json"],
    ] {
        assert_eq!(twisted(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_verification_exits_1() {
    // elliptic-case coefficients with a = d = 0 are not a twisted tensor product
    let out = twisted(&["ttp", "--coeffs", "f=1,A=1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn presentation_round_trips_through_json_file() {
    let made = json_of(&["make-family", "--family", "Tgh", "--params", "g=1,h=2", "--field", "Fp:13"]);
    let dir = std::env::temp_dir().join(format!("twisted-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tgh.json");
    std::fs::write(&path, made["presentation"].to_string()).unwrap();
    let from_file = json_of(&["classify", "--in", path.to_str().unwrap()]);
    let direct = json_of(&["classify", "--family", "Tgh", "--params", "g=1,h=2", "--field", "Fp:13"]);
    assert_eq!(from_file, direct);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_does_not_depend_on_workers() {
    let run = |w: &str| twisted(&["table-report", "--samples", "4", "--seed", "3", "--workers", w]).stdout;
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    let env = Command::new(env!("CARGO_BIN_EXE_twisted"))
        .args(["table-report", "--samples", "4", "--seed", "3"])
        .env("TWISTED_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(one, env.stdout);
}

#[test]
fn sklyanin_report() {
    let v = json_of(&["sklyanin", "--abc", "1,1,2", "--field", "Fp:13"]);
    assert_eq!(v["type_ec"], true);
    assert_eq!(v["skew_pairs"]["bijection"], true);
    assert_eq!(v["sigma_translation"]["failures"].as_array().map(Vec::len), Some(0));
    let d = json_of(&["sklyanin", "--abc", "0,0,1", "--report", "degeneracy", "--field", "Fp:13"]);
    assert_eq!(d["degenerate_class"], "DegenerateS1");
}

#[test]
fn pa_center_and_iso() {
    let z = json_of(&["center", "--family", "Pa", "--params", "a=1", "--degree", "2"]);
    assert_eq!(z["dim"], 1);
    assert_eq!(z["verified"], true);
    let iso = json_of(&["iso", "--a", "Pa:a=2", "--b", "Pa:a=1/2"]);
    assert_eq!(iso["a"], "Pa(a=2)");
    assert!(iso["decision"].is_object());
}

#[test]
fn classify_cubic_text() {
    let out = twisted(&["classify-cubic", "--poly", "y^2*z - x^3 - x*z^2", "--field", "Fp:13", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Smooth"), "{text}");
    assert!(text.contains("j: 12"), "{text}");
}

#[test]
fn verify_suite_passes() {
    let v = json_of(&["verify-suite", "--suite", "dual", "--seed", "1"]);
    assert_eq!(v["passed"], true);
}
