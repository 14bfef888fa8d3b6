use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use qzero_core::constructions::fixtures::{l1, l_theorem1};
use qzero_core::subspace::{Subspace, SubspaceFile};
use qzero_core::QMatrix;

fn qzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzero")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn write_subspace(dir: &Path, name: &str, g: &Subspace) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(&SubspaceFile::from(g)).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("NDJSON")).collect()
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"kind\": \"subspace\", \"ambient\": ").unwrap();
    assert_eq!(code(&qzero(&["check", bad.to_str().unwrap()])), 64);
    assert_eq!(code(&qzero(&["reproduce", "theorem9"])), 64);
    assert_eq!(code(&qzero(&["frobnicate"])), 64);
    assert_eq!(code(&qzero(&["check", dir.path().join("missing.json").to_str().unwrap()])), 64);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&qzero(&["--help"])), 0);
}

#[test]
fn check_theorem1_subspace() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_subspace(dir.path(), "l.json", &l_theorem1());
    let o = qzero(&["--format", "json", "check", &p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let lines = json_lines(&o);
    let cbar0 = lines.iter().find(|r| r["check"] == "cbar0").unwrap();
    assert_eq!(cbar0["detail"]["status"], "ZERO");
}

#[test]
fn verify_saved_tampered_and_truncated() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("emit");
    let o = qzero(&["reproduce", "theorem1", "--emit", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut files: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    for f in &files {
        assert_eq!(code(&qzero(&["verify", f.to_str().unwrap()])), 0, "{}", f.display());
    }
    let text = std::fs::read_to_string(&files[0]).unwrap();

    // flip one scalar somewhere in the body
    let mut v: Value = serde_json::from_str(&text).unwrap();
    fn bump(v: &mut Value) -> bool {
        match v {
            Value::String(s) if s.parse::<qzero_core::QScalar>().is_ok() => {
                let x: qzero_core::QScalar = s.parse().unwrap();
                *s = (&x + &qzero_core::QScalar::one()).to_string();
                true
            }
            Value::Array(a) => a.iter_mut().any(bump),
            Value::Object(o) => o.iter_mut().filter(|(k, _)| k.as_str() != "digest").any(|(_, x)| bump(x)),
            _ => false,
        }
    }
    assert!(bump(&mut v));
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, v.to_string()).unwrap();
    assert_eq!(code(&qzero(&["verify", tampered.to_str().unwrap()])), 1);

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&qzero(&["verify", truncated.to_str().unwrap()])), 64);
}

fn synthesize_dims(g: &Subspace) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let p = write_subspace(dir.path(), "g.json", g);
    let out = dir.path().join("channel.json");
    let o = qzero(&["--format", "json", "synthesize", &p, "--out", out.to_str().unwrap()]);
    let dims = json_lines(&o).into_iter().find(|r| r["check"] == "dims").map(|r| r["detail"].clone()).unwrap_or(Value::Null);
    if code(&o) == 0 {
        assert!(out.exists());
    }
    (code(&o), dims)
}

#[test]
fn synthesize_fixtures() {
    let (c, d) = synthesize_dims(&l_theorem1());
    assert_eq!(c, 0);
    assert_eq!((d["n"].clone(), d["d"].clone(), d["m"].clone()), (4.into(), 8.into(), 3.into()));
    let (c, d) = synthesize_dims(&l1());
    assert_eq!(c, 0);
    assert_eq!(d["m"], 5);
}

#[test]
fn synthesize_rejects_subspace_without_identity() {
    let g = Subspace::span(2, &[QMatrix::matrix_unit(2, 0, 0)]).unwrap();
    let (c, _) = synthesize_dims(&g);
    assert_eq!(c, 1);
}

#[test]
fn json_output_is_deterministic() {
    let a = qzero(&["--format", "json", "--seed", "3", "reproduce", "lemma6"]);
    let b = qzero(&["--format", "json", "--seed", "3", "reproduce", "lemma6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let last = json_lines(&a).pop().unwrap();
    assert_eq!((last["fail"].clone(), last["exit"].clone()), (0.into(), 0.into()));
}
