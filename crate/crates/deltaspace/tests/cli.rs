//! End-to-end checks of the CLI JSON surfaces and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltaspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn minors_lists_all_positive_for_a3() {
    let v = json(&["minors", "--type", "A3"]);
    assert_eq!(v["n"], 3);
    assert_eq!(v["all_nonzero"], true);
    assert!(v["witness"].is_null());
    let minors = v["minors"].as_object().unwrap();
    assert_eq!(minors.len(), 7);
    assert_eq!(minors["[1,2,3]"], "4");
    assert_eq!(minors["[2]"], "2");
}

#[test]
fn hilbert_on_cyclic_matrix_file() {
    let dir = std::env::temp_dir().join("deltaspace-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("perm3.json");
    std::fs::write(
        &path,
        r#"{"n": 3, "rows": [["0","1","0"],["0","0","1"],["1","0","0"]]}"#,
    )
    .unwrap();
    let v = json(&["hilbert", "--matrix", path.to_str().unwrap(), "--dmax", "6"]);
    let dims: Vec<u64> = v["dims_primal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 3, 3, 3, 3, 3, 3]);
    assert_eq!(v["dims_primal"], v["dims_dual"]);
    assert_eq!(v["minors_nonzero"], false);
    assert_eq!(v["binomial_profile"], false);
    assert_eq!(v["witness"], serde_json::json!([1]));
}

#[test]
fn geometric_certificates() {
    let v = json(&["geometric", "--type", "A2", "--poly", "x1^2"]);
    assert_eq!(v["status"], "not-in-space");
    assert_eq!(v["witness"]["i"], 1);

    let v = json(&[
        "geometric",
        "--type",
        "A2",
        "--poly",
        "3*x1^2 + 12*x1*x2 + 3*x2^2 - x1 + 5",
    ]);
    assert_eq!(v["status"], "geometric");
    assert_eq!(v["coefficients"]["[1,2]"], "2");
    assert_eq!(v["coefficients"]["[1]"], "-1/2");
    assert_eq!(v["coefficients"]["[]"], "5");
    assert!(v["witness"].is_null());
}

#[test]
fn volume_polynomial_output() {
    let v = json(&["volpoly", "--type", "A2", "--normalization", "root"]);
    assert_eq!(v["type"], "A2");
    assert_eq!(v["degree"], 2);
    assert_eq!(v["coefficients"]["x1*x2"], "2");
    assert_eq!(v["coefficients"]["x1^2"], "1/2");
    assert_eq!(v["polynomial"], "1/2*x1^2 + 2*x1*x2 + 1/2*x2^2");

    let v = json(&["facevol", "--type", "A3", "--subset", "1,3"]);
    assert_eq!(v["polynomial"], "4*x1*x3");
    assert_eq!(v["subset"], serde_json::json!([1, 3]));
}

#[test]
fn orbit_and_volume() {
    let v = json(&["orbit", "--type", "A2", "--weight", "1,1"]);
    assert_eq!(v["size"], 6);
    let v = json(&["volume", "--type", "A2", "--weight", "1,1"]);
    assert_eq!(v["volume"], "9");
    // rationals stay exact end to end
    let v = json(&["volume", "--type", "A2", "--weight", "1/2,1/2"]);
    assert_eq!(v["volume"], "9/4");
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["volpoly", "--type", "B2"],
        vec!["basis", "--type", "A2"],
        vec!["orbit", "--type", "G2", "--weight", "1,1"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["minors", "--type", "Z9"],
        vec!["volume", "--type", "A2", "--weight", "1"],
        vec!["geometric", "--type", "A2", "--poly", "x3 + 1"],
        vec!["hilbert", "--matrix", "/nonexistent/file.json"],
        vec!["minors", "--type", "A2", "--matrix", "/tmp/x.json"],
        vec!["facevol", "--type", "A2", "--subset", "5"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn no_floats_in_output() {
    for args in [
        vec!["volpoly", "--type", "G2"],
        vec!["volume", "--type", "B2", "--weight", "1/3,2"],
        vec!["minors", "--type", "B3"],
    ] {
        let out = run(&args);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        fn assert_no_floats(v: &serde_json::Value) {
            match v {
                serde_json::Value::Number(n) => assert!(n.is_u64() || n.is_i64()),
                serde_json::Value::Array(a) => a.iter().for_each(assert_no_floats),
                serde_json::Value::Object(o) => o.values().for_each(assert_no_floats),
                _ => {}
            }
        }
        assert_no_floats(&v);
    }
}
