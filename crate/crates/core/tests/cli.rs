use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_affpi0"));
    c.env_remove("AFFPI0_CACHE")
        .env_remove("AFFPI0_MAX_BASIS")
        .env_remove("AFFPI0_MAX_DEGREE")
        .env_remove("AFFPI0_MAX_TERMS");
    c
}

fn run(cmd: &mut Command, args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.args(args).output().expect("binary runs");
    (status.code().expect("exit code"), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn comparable(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).expect("json report");
    let o = v.as_object_mut().unwrap();
    o.remove("timing_ms");
    o.remove("command");
    v
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "three.json", r#"{"field":"Q","vars":["x"],"relations":["x^3 - x"]}"#);
    let args = ["--format", "json", "pi0", a.as_str(), "--method", "all", "--deg", "3"];
    let (c1, o1, _) = run(&mut bin(), &args);
    let (c2, o2, _) = run(&mut bin().arg("--sequential"), &args);
    assert_eq!((c1, c2), (0, 0));
    let (v1, v2) = (comparable(&o1), comparable(&o2));
    assert_eq!(v1, v2);
    assert_eq!(v1["schema"], 1);
    assert!(v1["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let idem = write(dir.path(), "idem.json", r#"{"field":"Q","vars":["t"],"relations":["t^2 - t"]}"#);
    let good = write(dir.path(), "good.json", r#"{"source":"idem.json","target":{"field":"Q","vars":[]},"images":["1"]}"#);
    let bad = write(dir.path(), "bad.json", r#"{"source":"idem.json","target":{"field":"Q","vars":[]},"images":["2"]}"#);
    assert_eq!(run(&mut bin(), &["hom", "check", &good]).0, 0);
    let (code, _, err) = run(&mut bin(), &["hom", "check", &bad]);
    assert_eq!(code, 1, "{err}");
    let broken = write(dir.path(), "broken.json", "{");
    assert_eq!(run(&mut bin(), &["alg", "gb", &broken]).0, 2);
    assert_eq!(run(&mut bin(), &["alg", "gb", "/nonexistent/a.json"]).0, 2);
    assert_eq!(run(&mut bin(), &["frobnicate"]).0, 2);
    let (code, _, err) = run(bin().env("AFFPI0_MAX_BASIS", "1"), &["derham", "h0", &idem, "--deg", "3"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("resource limit"));
}

#[test]
fn json_error_document() {
    let (code, out, _) = run(bin().env("AFFPI0_MAX_DEGREE", "1"), &["--format", "json", "verify", "lemmas", "--only", "rotation"]);
    assert_eq!(code, 0, "{out}");
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "cube.json", r#"{"field":"Q","vars":["x"],"relations":["x^3 - x"]}"#);
    let (code, out, _) = run(bin().env("AFFPI0_MAX_DEGREE", "2"), &["--format", "json", "alg", "gb", &a]);
    assert_eq!(code, 3);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["exit_code"], 3);
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let a = write(dir.path(), "circle.json", r#"{"field":"Q","vars":["x","y"],"relations":["x^2 + y^2 - 1","x*y"]}"#);
    let c = cache.to_str().unwrap();
    let (code, first, err) = run(&mut bin(), &["--cache-dir", c, "alg", "gb", &a]);
    assert_eq!(code, 0);
    assert!(err.contains("miss"), "{err}");
    let (_, second, err) = run(&mut bin(), &["--cache-dir", c, "alg", "gb", &a]);
    assert!(err.contains("hit"), "{err}");
    assert_eq!(first, second);
    let entry = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "garbage").unwrap();
    let (code, third, err) = run(bin().env("AFFPI0_CACHE", c), &["alg", "gb", &a]);
    assert_eq!(code, 0);
    assert!(err.contains("recomputed"), "{err}");
    assert_eq!(first, third);
    let (_, _, err) = run(bin().env("AFFPI0_CACHE", c), &["--no-cache", "alg", "gb", &a]);
    assert!(!err.contains("hit"), "{err}");
}

#[test]
fn commands_cover_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let t = write(p, "t.json", r#"{"field":"Q","vars":["t"]}"#);
    write(p, "u.json", r#"{"field":"Q","vars":["u"]}"#);
    write(p, "ux.json", r#"{"field":"Q","vars":["u","x"]}"#);
    let f = write(p, "f.json", r#"{"source":"t.json","target":"u.json","images":["0"]}"#);
    let g = write(p, "g.json", r#"{"source":"t.json","target":"u.json","images":["u"]}"#);
    let h = write(p, "h.json", r#"{"source":"t.json","target":"ux.json","images":["u*x"]}"#);
    assert_eq!(run(&mut bin(), &["homotopy", "verify", &f, &g, &h]).0, 0);
    let (code, out, _) = run(&mut bin(), &["homotopy", "search", &f, &g, "--xdeg", "1", "--bdeg", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("found"), "{out}");
    assert_eq!(run(&mut bin(), &["homotopy", "verify", &g, &f, &h]).0, 1);
    let (code, out, _) = run(&mut bin(), &["sing", "h0", &t, "--tower", "2", "--deg", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&mut bin(), &["--format", "json", "derham", "check-integration", &t, "--bdeg", "2", "--xdeg", "3"]);
    assert_eq!(code, 0, "{out}");
    let dual = write(p, "dual.json", r#"{"field":"Q","vars":["t"],"relations":["t^2"]}"#);
    let eps = write(p, "eps.json", r#"{"field":"Q","vars":["eps"],"relations":["eps^2"]}"#);
    let i2 = write(p, "i2.json", r#"{"field":{"p":2},"vars":["t"],"relations":["t^2 - t"]}"#);
    let f2 = write(p, "f2.json", r#"{"field":{"p":2},"vars":[]}"#);
    let sq = write(p, "sq.json", r#"{"field":{"p":3},"vars":["t"],"relations":["t^2 - 1"]}"#);
    let f3 = write(p, "f3.json", r#"{"field":{"p":3},"vars":[]}"#);
    for [law, a, b, c] in [["exp", &dual, &eps, &eps], ["tensor", &i2, &i2, &f2], ["dsum", &sq, &f3, &f3]] {
        let (code, out, err) = run(&mut bin(), &["verify", "law", law, a, b, c]);
        assert_eq!(code, 0, "{law}: {out}{err}");
    }
}
