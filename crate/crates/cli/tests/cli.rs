use std::process::{Command, Output};

fn vhess(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vhess"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn family_build_perazzo_prints_the_instance() {
    let o = vhess(&["family", "build", "perazzo"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["polynomial"]["text"], "x0*x3^2 + x1*x3*x4 + x2*x4^2");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["expected"]["hess_is_zero"], true);
}

#[test]
fn family_build_pencil_with_fermat_conic_has_eight_variables() {
    let o = vhess(&["family", "build", "pencil", "--g", "z1^2+z2^2+z3^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["polynomial"]["vars"].as_array().unwrap().len(), 8);
    assert_eq!(v["degree"], 4);
}

#[test]
fn family_build_scroll_dual_is_a_cubic() {
    let o = vhess(&["family", "build", "scroll-dual", "--a", "1", "--b", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["degree"], 3);
}

#[test]
fn family_build_writes_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = vhess(&["family", "build", "perazzo", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("x0*x3^2"));

    // the written instance is accepted back by `profile`
    let o = vhess(&["profile", path.to_str().unwrap(), "--expect", "hess=true"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn family_usage_errors_exit_two() {
    assert_eq!(vhess(&["family", "build", "no-such-family"]).status.code(), Some(2));
    assert_eq!(vhess(&["family", "build", "pencil", "--g", "z1"]).status.code(), Some(2));
    assert_eq!(vhess(&["family", "build", "generic-det", "--n", "0"]).status.code(), Some(2));
    assert_eq!(vhess(&[]).status.code(), Some(2));
}

#[test]
fn family_list_names_every_family() {
    let o = vhess(&["family", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 15);
}

#[test]
fn profile_perazzo_reports_a_vanishing_hessian() {
    let o = vhess(&["profile", "perazzo"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["hess_is_zero"], true);
}

#[test]
fn profile_expectations_drive_the_exit_code() {
    let ok = vhess(&["profile", "p7-fermat", "--expect", "codim=2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = vhess(&["profile", "p7-fermat", "--expect", "codim=3"]);
    assert_eq!(bad.status.code(), Some(1));
    let sampled = vhess(&["profile", "p7-fermat", "--rank-mod", "sample"]);
    assert_eq!(json(&sampled)["rank_mod_f"], 5);
}

#[test]
fn profile_parse_errors_exit_two() {
    assert_eq!(vhess(&["profile", "x +* y"]).status.code(), Some(2));
    assert_eq!(vhess(&["profile", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(vhess(&["profile", "perazzo", "--expect", "bogus=1"]).status.code(), Some(2));
    assert_eq!(vhess(&["profile", "perazzo", "--prime", "10"]).status.code(), Some(2));
}

#[test]
fn verify_named_identities() {
    let o = vhess(&["verify", "segre-alpha", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["measured_constant"], "-2");

    let o = vhess(&["verify", "lagrange", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["method"], "exact");

    let o = vhess(&["verify", "pf-square", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "PASS");
}

#[test]
fn verify_unknown_identity_exits_two() {
    assert_eq!(vhess(&["verify", "no-such-identity"]).status.code(), Some(2));
}

#[test]
fn verify_suite_runs_every_identity() {
    let o = vhess(&["verify", "suite"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 15);
}

#[test]
fn acceptance_passes_and_is_reproducible() {
    let first = vhess(&["acceptance"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = vhess(&["acceptance"]);
    assert_eq!(first.stdout, second.stdout);
    let v = json(&first);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["criteria"].as_array().unwrap().len(), 16);
}

#[test]
fn acceptance_writes_the_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = vhess(&["acceptance", "--seed", "7", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout(&o);
    assert_eq!(summary.lines().filter(|l| l.starts_with("criterion")).count(), 16);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], 7);
    assert_eq!(report["verdict"], "PASS");
}
