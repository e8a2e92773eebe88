use std::path::PathBuf;
use std::process::{Command, Output};

use evalbirep::hecke::parse_hecke;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evalbirep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("evalbirep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn hecke_quadratic_expansion() {
    let o = run(&["hecke", "mul", "--d", "3", "T1*T1"]);
    assert!(o.status.success());
    let want = parse_hecke(3, "1 + (q^-1 - q)*T1").unwrap();
    assert_eq!(stdout(&o).trim(), want.to_string());
}

#[test]
fn eval_on_t0_ignores_parameter() {
    let a = run(&["hecke", "eval", "--d", "3", "--a", "1", "T0"]);
    let b = run(&["hecke", "eval", "--d", "3", "--a", "q^2", "T0"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["hecke", "eval", "--d", "3", "--a", "-q", "rho"]);
    assert!(c.status.success());
    assert_ne!(stdout(&c), stdout(&a));
}

#[test]
fn parse_errors_report_position() {
    let o = run(&["hecke", "mul", "--d", "3", "T1 * ?"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn verify_prop_invariant_passes() {
    let o = run(&["verify", "prop-invariant", "--d", "3", "--r", "1", "--s", "-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn verify_end_algebra_dimension() {
    let o = run(&["verify", "end-algebra", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("12 (expected 12)"));
}

#[test]
fn verify_cell_radical_at_critical_z() {
    let p = tmp("cell.json");
    let o = run(&["verify", "cell-radical", "--d", "4", "--z", "(-q)^4", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let dims: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["id"] == "radical-dimension")
        .map(|c| c["detail"].as_str().unwrap())
        .collect();
    assert_eq!(dims.len(), 1);
    assert!(dims[0].starts_with("radical dimension 1"));
    assert_eq!(v["schema"], 1);
}

#[test]
fn reports_are_byte_identical() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let o = run(&["verify", "decat", "--d", "3", "--seed", "11", "--json", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn unknown_suite_and_resource_guard() {
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "decat", "--d", "6"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "decat", "--d", "2"]).status.code(), Some(2));
    let o = run(&["zigzag", "--d", "6", "--allow-large"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dimension 24"));
}

#[test]
fn complex_of_a_word() {
    let o = run(&["complex", "--d", "3", "T1' T1", "--vertex", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("minimal model: 0: Ze_1<0>[0]"), "{}", stdout(&o));
    let o = run(&["complex", "--d", "3", "rho rho rho", "--x", "0", "--decompose"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("X decomposition: X0<"), "{}", stdout(&o));
}

#[test]
fn zigzag_products() {
    let o = run(&["zigzag", "--d", "3", "mul", "p0|1", "p1|0"]);
    assert_eq!(stdout(&o).trim(), "1*l0");
    let o = run(&["zigzag", "--d", "4", "mul", "p0|3", "p3|0"]);
    assert_eq!(stdout(&o).trim(), "1*l0");
    let o = run(&["zigzag", "--d", "3", "mul", "p0|2", "p2|0"]);
    assert_eq!(stdout(&o).trim(), "-1*l0");
}
