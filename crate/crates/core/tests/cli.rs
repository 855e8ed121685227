use std::path::PathBuf;
use std::process::{Command, Output};

fn quiver(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("quivers");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn pathcong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcong")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn paths_lists_every_path() {
    let o = pathcong(&["paths", &quiver("single_arrow.quiver")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("alpha: 1 -> 2 (length 1)"));
}

#[test]
fn validate_reports_shape() {
    let o = pathcong(&["validate", &quiver("d4.quiver")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ok: 4 vertices, 3 arrows, acyclic: yes");
}

#[test]
fn congruence_listing() {
    let o = pathcong(&["congruences", &quiver("kronecker.quiver")]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("8 congruences\n"));
}

#[test]
fn ideal_listing_json() {
    let o = pathcong(&["ideals", "--json", &quiver("three_arrows.quiver")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}

#[test]
fn lattice_dot_has_one_node_per_ideal() {
    let dir = std::env::temp_dir().join(format!("pathcong-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("ideals.dot");
    let o = pathcong(&[
        "lattice",
        "--route",
        "ideals",
        "--dot",
        dot.to_str().unwrap(),
        &quiver("three_arrows.quiver"),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(text.starts_with("digraph"));
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    let edges = text.lines().filter(|l| l.contains("->")).count();
    assert_eq!(nodes, 18);
    assert_eq!(edges, 35);
}

#[test]
fn check_kronecker_is_modular_not_distributive() {
    let o = pathcong(&["check", &quiver("kronecker.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = |name: &str| out.lines().find(|l| l.trim_start().starts_with(name)).unwrap().to_string();
    assert!(line("modular").contains('✓'));
    assert!(line("distributive").contains('✗'));
    assert!(!out.contains("VIOLATION"));
}

#[test]
fn check_json_is_consistent() {
    let o = pathcong(&["check", "--json", &quiver("d4.quiver")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "consistent"));
}

#[test]
fn cyclic_quiver_is_a_domain_error() {
    let o = pathcong(&["congruences", &quiver("triangle.quiver")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = pathcong(&["validate", &quiver("triangle.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("acyclic: no"));
}

#[test]
fn missing_file_is_a_domain_error() {
    assert_eq!(pathcong(&["paths", "/nonexistent/q.quiver"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pathcong(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pathcong(&["lattice", "--route", "nowhere", "x"]).status.code(), Some(2));
}

#[test]
fn cap_is_enforced() {
    let o = pathcong(&["congruences", "--max-elements", "4", &quiver("kronecker.quiver")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["lattice", "--json", "--route", "ideals"],
        vec!["congruences", "--json"],
        vec!["check", "--json"],
    ] {
        let mut a = args.clone();
        let q = quiver("three_arrows.quiver");
        a.push(&q);
        assert_eq!(pathcong(&a).stdout, pathcong(&a).stdout);
    }
}

#[test]
fn random_check_is_seeded_and_consistent() {
    let args = ["random-check", "--trials", "5", "--seed", "7"];
    let a = pathcong(&args);
    assert!(a.status.success());
    assert!(stdout(&a).ends_with("5 of 5 trials consistent\n"));
    assert_eq!(a.stdout, pathcong(&args).stdout);
}
