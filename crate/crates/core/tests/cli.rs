use std::process::Command;

fn forge(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_syzygy-forge")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("syzygy-forge-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn construct_then_resolve_a_file() {
    let (code, json, _) = forge(&["construct", "--example", "nc3"]);
    assert_eq!(code, 0);
    let path = temp_file("nc3.json", &json);
    let (code, out, _) = forge(&["resolve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("F0: S(-1)^5\nF1: S(-2)^4\nF2: S(-3)^1\n"));
}

#[test]
fn residue_field_resolves_by_binomials() {
    let k = r#"{"p": 32003, "n": 2, "target_degrees": [0], "source_degrees": [1, 1, 1], "matrix": [["x0", "x1", "x2"]]}"#;
    let path = temp_file("k.json", k);
    let (code, out, _) = forge(&["resolve", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("F1: S(-1)^3\nF2: S(-2)^3\nF3: S(-3)^1\n"));
}

#[test]
fn spec_file_builds() {
    let spec = r#"{"kind": "OmegaP", "n": 3, "p": 1, "l": 0}"#;
    let path = temp_file("spec.json", spec);
    let (code, out, _) = forge(&["construct", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"n\": 3"));
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.json", r#"{"p": 32003, "n": 1, "target_degrees": [0], "source_degrees": [1], "matrix": [["x0 + z"]]}"#);
    let (code, _, err) = forge(&["resolve", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error[ParseError]"));
    let (code, _, err) = forge(&["construct", "--example", "nope"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error[InvalidInput]"));
    let (code, _, _) = forge(&["--p", "15", "classify", "--example", "nc3"]);
    assert_eq!(code, 3);
    let (code, out, _) = forge(&["verify-paper", "--only", "3", "--corrupt-pfaffian-sign"]);
    assert_eq!(code, 5);
    assert!(out.contains("[FAIL]  3"));
}

#[test]
fn verify_subset_passes() {
    let (code, out, _) = forge(&["verify-paper", "--only", "nc"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
}

#[test]
fn outputs_are_deterministic() {
    let a = forge(&["--seed", "5", "classify", "--example", "F2"]);
    let b = forge(&["--seed", "5", "classify", "--example", "F2"]);
    assert_eq!(a, b);
    let c = forge(&["--mode", "koszul", "buchsbaum", "--example", "curve4"]);
    assert_eq!(c.0, 0);
    assert!(c.1.contains("\"verdict\": \"True\""));
}
