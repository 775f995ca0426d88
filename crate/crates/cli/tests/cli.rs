use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn hopfmu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfmu")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(dir: &Path, family: &str, n: &str) -> PathBuf {
    let path = dir.join(format!("{family}{n}.txt"));
    let o = hopfmu(&["generate", "--family", family, "--n", n, "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn zeta_three_checks_out() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "zeta", "3");
    let o = hopfmu(&["check-theorem", path.to_str().unwrap(), "--map", "zeta3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["hopf"]["value"].as_i64().unwrap().abs(), 3);
    assert_eq!(report["mu"]["A,B,C"], 9);
    assert_eq!(report["theorem_holds"], true);
}

#[test]
fn hopf_of_collapse5_is_zero() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "collapse5", "2");
    let o = hopfmu(&["hopf", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(result["value"], 0);
    assert!(result["well_definedness_checks"].as_array().unwrap().len() >= 23);
}

#[test]
fn mu_of_hopf_map_is_four_nines() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "hopf", "2");
    let o = hopfmu(&["mu", path.to_str().unwrap(), "--map", "hopf"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let counts: Vec<&str> = text.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(counts, ["9", "9", "9", "9"]);
    let one = hopfmu(&["mu", path.to_str().unwrap(), "--triangle", "B,C,D"]);
    assert_eq!(stdout(&one).trim(), "B,C,D\t9");
}

#[test]
fn fibers_report_certificates() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "collapse5", "2");
    let o = hopfmu(&["fibers", path.to_str().unwrap(), "--triangle", "A,B,C", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["mu"], 3);
    assert_eq!(report["components"][0]["certificate"]["kind"], "Lemma1");
}

#[test]
fn validate_accepts_generated_bundles() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "xi", "2");
    let o = hopfmu(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S³ homology certified"));
}

#[test]
fn validate_rejects_a_torus() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("torus.txt");
    let mut text = String::from("complex T\ndim 2\n");
    for i in 0..7 {
        text.push_str(&format!("facet {} {} {}\n", i, (i + 1) % 7, (i + 3) % 7));
        text.push_str(&format!("facet {} {} {}\n", i, (i + 2) % 7, (i + 3) % 7));
    }
    fs::write(&path, text).unwrap();
    assert_eq!(hopfmu(&["validate", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "").unwrap();
    assert_eq!(hopfmu(&["validate", path.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&path, "complex K\ndim 1\nfacet a b\nmap f K K\na -> X\nb -> a\n").unwrap();
    let o = hopfmu(&["mu", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn unmet_preconditions_exit_three() {
    let dir = TempDir::new().unwrap();
    let path = generate(dir.path(), "collapse5", "2");
    let o = hopfmu(&["fibers", path.to_str().unwrap(), "--triangle", "A,B"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn generated_bundles_roundtrip() {
    let dir = TempDir::new().unwrap();
    let a = generate(dir.path(), "zeta", "2");
    let b = dir.path().join("again.txt");
    let o = hopfmu(&["generate", "--family", "zeta", "--n", "2"]);
    fs::write(&b, &o.stdout).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
