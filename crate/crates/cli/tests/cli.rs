use std::path::{Path, PathBuf};
use std::process::{Command as Process, Output};

use splitgraph::audit::{DIHEDRAL_DESCRIPTION, KLEIN_BY_C2_DESCRIPTION};
use splitgraph::invariants::parse_dot;
use splitgraph_cli::{run, Command, Format, RunConfig};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn fixtures() -> (TempDir, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let d8 = write(&dir, "d8.split", DIHEDRAL_DESCRIPTION);
    let v4 = write(&dir, "v4c2.split", KLEIN_BY_C2_DESCRIPTION);
    (dir, d8, v4)
}

fn exec(config: &RunConfig) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(config, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str], cwd: &Path) -> Output {
    Process::new(env!("CARGO_BIN_EXE_splitgraph"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

#[test]
fn ds_prints_published_sequences() {
    let (_dir, d8, v4) = fixtures();
    let (code, out, _) = exec(&RunConfig::new(Command::Ds).with_inputs([&d8]));
    assert_eq!(code, 0);
    assert_eq!(out, "[1, 1, 1, 4, 4, 4, 4, 7]\n");
    let (_, out, _) = exec(&RunConfig::new(Command::Ds).with_inputs([&v4]));
    assert_eq!(out, "[1, 2, 2, 2, 4, 4, 4, 7]\n");
}

#[test]
fn audit_exits_two_on_witness() {
    let (_dir, d8, v4) = fixtures();
    let (code, out, _) = exec(&RunConfig::new(Command::Audit).with_inputs([&d8, &v4]));
    assert_eq!(code, 2);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["command"], "audit");
    assert_eq!(json["results"]["verdict"], "ILL-DEFINED-WITNESS");
    assert_eq!(json["results"]["groups_isomorphic"], true);
}

#[test]
fn audit_of_identical_descriptions_is_consistent() {
    let (_dir, d8, _) = fixtures();
    let config = RunConfig::new(Command::Audit).with_inputs([&d8, &d8]).with_format(Format::Text);
    let (code, out, _) = exec(&config);
    assert_eq!(code, 0);
    assert!(out.starts_with("verdict: consistent\n"), "{out}");
}

#[test]
fn graph_dot_has_every_element() {
    let (_dir, _, v4) = fixtures();
    let config = RunConfig::new(Command::Graph).with_inputs([&v4]).with_format(Format::Dot);
    let (code, out, _) = exec(&config);
    assert_eq!(code, 0);
    let dot = parse_dot(&out).unwrap();
    assert_eq!(dot.nodes.len(), 8);
    assert_eq!(dot.edges.len(), 13);
    assert!(dot.nodes.iter().any(|n| n == "a b c"));
}

#[test]
fn graph_text_reports_generator_condition() {
    let (_dir, d8, v4) = fixtures();
    let (_, out, _) = exec(&RunConfig::new(Command::Graph).with_inputs([&v4]));
    assert!(out.contains("generator condition: violated"), "{out}");
    assert!(out.contains("  a = c b c\n"), "{out}");
    let (_, out, _) = exec(&RunConfig::new(Command::Graph).with_inputs([&d8]));
    assert!(out.contains("generator condition: no violation up to length 4"), "{out}");
}

#[test]
fn parse_errors_carry_file_and_position() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.split", "K: <x | x^4>\nA: <y | y^2>\naction: y: x -> z\n");
    let (code, out, err) = exec(&RunConfig::new(Command::Ds).with_inputs([&bad]));
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("bad.split:3:17"), "{err}");
}

#[test]
fn invalid_action_is_an_error() {
    let dir = TempDir::new().unwrap();
    // x -> x^2 is not a bijection of C4
    let bad = write(&dir, "bad.split", "K: <x | x^4>\nA: <y | y^2>\naction: y: x -> x^2\n");
    let (code, _, err) = exec(&RunConfig::new(Command::Graph).with_inputs([&bad]));
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn argument_shape_is_validated() {
    let (_dir, d8, _) = fixtures();
    let (code, _, err) = exec(&RunConfig::new(Command::Audit).with_inputs([&d8]));
    assert_eq!(code, 1);
    assert!(err.contains("exactly two"), "{err}");
    let config = RunConfig::new(Command::Ds).with_inputs([&d8]).with_format(Format::Dot);
    assert_eq!(exec(&config).0, 1);
}

#[test]
fn counterexample_and_classify_succeed() {
    let (code, out, _) = exec(&RunConfig::new(Command::Counterexample));
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["results"]["matches_published"], true);
    let (code, _, _) = exec(&RunConfig::new(Command::Classify));
    assert_eq!(code, 0);
}

#[test]
fn binary_maps_exit_codes() {
    let (dir, _, _) = fixtures();
    let out = binary(&["audit", "d8.split", "v4c2.split"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["ds", "--policy", "length-gate=both", "v4c2.split"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "[1, 1, 1, 1, 3, 3, 3, 7]\n");
    let out = binary(&["ds", "--policy", "length-gate=sometimes", "d8.split"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = binary(&["no-such-command"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (dir, _, _) = fixtures();
    for args in [
        &["graph", "d8.split"][..],
        &["graph", "--format", "json", "v4c2.split"],
        &["sweep", "d8.split", "v4c2.split"],
    ] {
        let (a, b) = (binary(args, dir.path()), binary(args, dir.path()));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
