use std::process::{Command, Output};

fn qhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn normalize_examples() {
    let cases = [
        (&["normalize", "x2*x1"][..], "q^-1*x1*x2"),
        (&["normalize", "xb4*x4", "--algebra", "s7"][..], "1 - xb1*x1 - xb2*x2 - xb3*x3"),
        (&["normalize", "alpha*alphab + q^2*gammab*gamma", "--algebra", "su2"][..], "1"),
        (&["normalize", "conj(x1)"][..], "xb1"),
    ];
    for (args, want) in cases {
        let o = qhopf(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qhopf(&["normalize", "x1 *"]).status.code(), Some(2));
    assert_eq!(qhopf(&["normalize", "y1"]).status.code(), Some(2));
    assert_eq!(qhopf(&["pairing", "--bogus"]).status.code(), Some(2));
    assert_eq!(qhopf(&["pairing", "--q", "1.5"]).status.code(), Some(2));
    assert_eq!(qhopf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn pairing_json() {
    let o = qhopf(&["pairing", "--q", "0.5", "--m", "30", "--n", "30", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let x = v["pairing"]["pairing_value"].as_f64().unwrap();
    assert!((x + 1.0).abs() < 1e-9);
    assert_eq!(v["pairing"]["tau0_value"], "2");
    assert_eq!(v["pairing"]["trivial_pairing"], "0");
}

#[test]
fn pairing_exact_text() {
    let o = qhopf(&["pairing", "--q", "1/3", "--m", "20", "--n", "20", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact ="));
}

#[test]
fn derive_relations_lists_tables() {
    let o = qhopf(&["derive-relations", "--family", "xx"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("# xx"));
    assert_eq!(s.lines().filter(|l| l.contains("->")).count(), 6);
}

#[test]
fn chern_small_budget() {
    let o = qhopf(&["chern-classical", "--samples", "20000", "--seed", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["c2_value"].as_f64().unwrap() + 1.0).abs() < 0.05);
}

#[test]
fn verify_spheres_passes() {
    let o = qhopf(&["verify-spheres"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn verify_all_json_schema() {
    let o = qhopf(&["verify-all", "--samples", "20000", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], 1);
    let checks = v["checks"].as_array().unwrap();
    let mut ids: Vec<&str> = checks.iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    for c in checks {
        assert!(c["reference"].is_string());
        assert!(c["residual"].is_string());
        assert!(c["wall_time"].as_f64().unwrap() >= 0.0);
        assert!(["pass", "fail"].contains(&c["status"].as_str().unwrap()));
    }
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n);
    let all_pass = checks.iter().all(|c| c["status"] == "pass");
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}

#[test]
fn corrupted_fixture_fails_by_name() {
    let o = qhopf(&["verify-all", "--samples", "20000", "--corrupt-fixture"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("FAIL") && l.contains("rmatrix.golden_xx")));
}

#[test]
fn truncation_too_small_fails() {
    // the truncation error 3^-16 exceeds the pairing tolerance
    assert_eq!(qhopf(&["pairing", "--q", "1/3", "--m", "8", "--n", "8"]).status.code(), Some(1));
}
