use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ramify"));
    c.env_remove("RAMIFY_PRECISION_CAP");
    c
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn run(args: &[&str], input: &Path) -> Output {
    bin().args(args).arg("--input").arg(input).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn swan_on_artin_schreier() {
    let out = run(&["swan"], &spec("swan_artin_schreier.json"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["swan"], json!(2));
    assert_eq!(v["methods"], json!([2, 2, 2]));
    assert_eq!(v["breaks"], json!({ "2": 1 }));
}

#[test]
fn gos_on_artin_schreier_line() {
    let out = run(&["gos"], &spec("gos_artin_schreier.toml"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["chi_c"], json!(-3));
    assert_eq!(v["regular"]["passed"], json!(true));
    assert_eq!(v["bounded_ramification"]["swan_divisor"], json!({ "inf": 4 }));
}

#[test]
fn herbrand_on_quaternion() {
    let out = run(&["herbrand"], &spec("herbrand_quaternion.json"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["jumps"], json!(["1", "3/2"]));
    assert_eq!(v["abelian"], json!(false));
    assert_eq!(v["hasse_arf"], Value::Null);
    assert_eq!(v["herbrand"]["failures"], json!([]));
}

#[test]
fn extension_from_toml() {
    let out = run(&["extension"], &spec("extension_tame.toml"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["i_g"], json!([null, 1, 1]));
    assert_eq!(v["different"]["from_discriminant"], json!(2));
    assert_eq!(v["different"]["agrees"], json!(true));
}

#[test]
fn artin_conductors_on_dihedral() {
    let out = run(&["artin"], &spec("artin_dihedral.json"));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let artin: Vec<i64> = v["irreducibles"].as_array().unwrap().iter().map(|e| e["artin"].as_i64().unwrap()).collect();
    assert_eq!(artin, vec![0, 0, 4]);
    assert_eq!(v["induction"], json!({ "artin": true, "swan": true }));
}

#[test]
fn toml_and_json_agree() {
    let dir = tempfile::tempdir().unwrap();
    let j = write_temp(&dir, "e.json", r#"{"schema": 1, "extension": {"kind": "tame", "q": 7, "e": 3}}"#);
    let a = run(&["extension"], &j);
    let b = run(&["extension"], &spec("extension_tame.toml"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_byte_identical_across_runs_and_precisions() {
    let p = spec("swan_artin_schreier.json");
    let a = run(&["extension"], &p);
    let b = run(&["extension"], &p);
    let c = run(&["extension", "--precision", "2"], &p);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn precision_cap_from_environment() {
    let out = bin()
        .args(["extension", "--precision", "1"])
        .arg("--input")
        .arg(spec("swan_artin_schreier.json"))
        .env("RAMIFY_PRECISION_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient_precision"));
}

#[test]
fn unknown_fields_rejected_unless_unchecked() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "u.json", r#"{"schema": 1, "extension": {"kind": "tame", "q": 7, "e": 3, "bogus": 1}}"#);
    let strict = run(&["extension"], &p);
    assert_eq!(strict.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("extension.bogus"));
    let lenient = run(&["extension", "--unchecked"], &p);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("warning"));
}

#[test]
fn spec_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{"),
        ("schema.json", r#"{"schema": 2}"#),
        ("wild.json", r#"{"schema": 1, "extension": {"kind": "artin_schreier", "q": 3, "m": 3}}"#),
        ("roots.json", r#"{"schema": 1, "extension": {"kind": "tame", "q": 7, "e": 4}}"#),
        ("chain.json", r#"{"schema": 1, "datum": {"group": {"builder": "cyclic", "n": 3}, "filtration": [[0, 1, 2]], "p": 3}}"#),
    ];
    for (name, text) in cases {
        let out = run(&["herbrand"], &write_temp(&dir, name, text));
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error["));
    }
    let missing = bin().arg("swan").output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn hasse_arf_violation_exits_3() {
    // an abelian datum with a non-integral upper jump, admitted only unchecked
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"schema": 1, "datum": {"group": {"builder": "elementary_abelian", "p": 2, "r": 2},
        "filtration": [[0, 1, 2, 3], [0, 1, 2, 3], [0, 1]], "p": 2}}"#;
    let p = write_temp(&dir, "ha.json", text);
    let out = run(&["herbrand", "--unchecked"], &p);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hasse_arf_violation"));
}

#[test]
fn table_format_renders() {
    let out = run(&["chars", "--format", "table"], &spec("artin_dihedral.json"));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("group_order  6"));
    assert!(text.lines().any(|l| l.trim_start().starts_with("2       2      [2, -1, 0]")), "{text}");
}

#[test]
fn verify_is_reproducible_per_seed() {
    let go = |seed: &str| bin().args(["verify", "--cases", "4", "--seed", seed]).output().unwrap();
    let (a, b) = (go("11"), go("11"));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["seed"], json!(11));
}
