use std::path::Path;
use std::process::{Command, Output};

use nilconn::report::{read_report, read_theorem};

fn nilconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilconn"))
        .args(args)
        .output()
        .expect("spawn nilconn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_c2_minimal_writes_feasible_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c2.json");
    let run = nilconn(&["analyze", "--algebra", "C2", "--orbit", "minimal", "--out", path_str(&out)]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(stdout(&run).trim(), "C2 minimal FEASIBLE dim(M)=0");

    let report = read_report(&out).unwrap();
    assert!(report.feasible);
    assert_eq!(report.solution_dim, Some(0));
    assert_eq!((report.dims.g, report.dims.h, report.dims.m), (10, 6, 4));
    let checks = report.checks.as_ref().unwrap();
    assert!(checks.curvature_zero && checks.torsion_zero && checks.is_transitive && checks.witness_is_fbar);
    assert_eq!(report.weights.as_ref().map(Vec::len), Some(4));
    assert_eq!(report.representation.as_deref(), Some("R(pi_1)"));
    assert!(report.timings.is_none());

    let raw: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(raw["conditions"], serde_json::json!(["I", "IIp", "adh"]));
}

#[test]
fn analyze_a2_regular_is_infeasible_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a2.json");
    let run = nilconn(&[
        "analyze",
        "--algebra",
        "A2",
        "--orbit",
        "regular",
        "--conditions",
        "I,IIp",
        "--out",
        path_str(&out),
    ]);
    assert!(run.status.success());
    assert_eq!(stdout(&run).trim(), "A2 regular INFEASIBLE dim(M)=-1");
    let report = read_report(&out).unwrap();
    assert!(!report.feasible);
    assert!(report.solution_dim.is_none());
    let cert = report.certificate.unwrap();
    assert!(cert.verified);
    assert_eq!(cert.support, cert.entries.len());
    assert_eq!(cert.sha256.len(), 64);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let run = nilconn(&["analyze", "--algebra", "B2", "--out", path_str(p)]);
        assert!(run.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn custom_orbit_file_selects_label() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("orbits.txt");
    std::fs::write(&file, "# C2 orbits\nlong: [2,1] 1\nshort: [1,1] 1\n").unwrap();
    let run = nilconn(&[
        "analyze",
        "--algebra",
        "C2",
        "--orbit",
        "custom",
        "--orbit-file",
        path_str(&file),
        "--label",
        "long",
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(stdout(&run).trim(), "C2 long FEASIBLE dim(M)=0");

    let ambiguous = nilconn(&["analyze", "--algebra", "C2", "--orbit", "custom", "--orbit-file", path_str(&file)]);
    assert_eq!(ambiguous.status.code(), Some(1));
}

#[test]
fn theorem_rank_two_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("theorem.json");
    let run = nilconn(&["theorem", "--max-rank", "2", "--out", path_str(&out)]);
    assert!(run.status.success());
    let text = stdout(&run);
    assert!(text.lines().any(|l| l.starts_with("C2 minimal") && l.contains("FEASIBLE")));
    assert_eq!(text.lines().last(), Some("agreement=true"));
    let table = read_theorem(&out).unwrap();
    assert_eq!(table.max_rank, 2);
    assert!(table.agreement);
    let feasible: Vec<String> = table
        .rows
        .iter()
        .filter(|r| r.feasible)
        .map(|r| format!("{} {}", r.algebra, r.orbit))
        .collect();
    assert_eq!(feasible, ["A1 minimal", "B2 minimal", "C2 minimal"]);
}

#[test]
fn exit_codes() {
    assert_eq!(nilconn(&["analyze", "--algebra", "E6"]).status.code(), Some(3));
    assert_eq!(nilconn(&["analyze", "--algebra", "B5"]).status.code(), Some(3));
    assert_eq!(nilconn(&["theorem", "--max-rank", "9"]).status.code(), Some(2));
    assert_eq!(nilconn(&["analyze"]).status.code(), Some(2));
    let missing = nilconn(&[
        "analyze",
        "--algebra",
        "A2",
        "--orbit",
        "custom",
        "--orbit-file",
        "/nonexistent/orbits.txt",
    ]);
    assert_eq!(missing.status.code(), Some(4));
    let unwritable = nilconn(&["analyze", "--algebra", "A1", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(unwritable.status.code(), Some(4));
}
