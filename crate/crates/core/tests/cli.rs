use std::process::Command;

use solvmat::cli::{run, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("solvmat").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn line_with<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key:?} in {text}"))
}

#[test]
fn ring_queries() {
    let (code, out, _) = cli(&["ring", "(1-x)*(1-y)"]);
    assert_eq!(code, EXIT_OK);
    assert!(line_with(&out, "sigma valuation").ends_with(" 2"));
    let (_, out, _) = cli(&["ring", "1+x+x^2"]);
    assert!(line_with(&out, "augmentation").ends_with(" 3"));
    let (_, out, _) = cli(&["ring", "x^-1-1"]);
    assert!(line_with(&out, "sigma valuation").ends_with(" 1"));
    let (code, _, err) = cli(&["ring", "1+*x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 2"), "{err}");
}

#[test]
fn ideal_queries() {
    let (code, out, _) = cli(&["--no-cache", "ideal", "--q", "3", "(1-x)^2"]);
    assert_eq!(code, EXIT_OK);
    assert!(line_with(&out, "I(3):").ends_with(" member"));
    let (_, out, _) = cli(&["--no-cache", "ideal", "--q", "3", "1-x"]);
    assert!(line_with(&out, "I(3):").ends_with("non-member"));
    let (_, out, _) = cli(&["--no-cache", "--format", "json", "ideal", "--q", "2", "2*(1-x)"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["cyclotomic_sigma"], true);
    let (code, _, err) = cli(&["--no-cache", "ideal", "--q", "6", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not a prime power"));
}

#[test]
fn order_queries() {
    let (_, out, _) = cli(&["--no-cache", "order", "--q", "5", "a"]);
    assert!(line_with(&out, "order:").ends_with(" 5"));
    let (_, out, _) = cli(&["--no-cache", "order", "--q", "5", "b"]);
    assert!(line_with(&out, "order:").ends_with("infinite"));
    let (code, out, _) = cli(&["--no-cache", "--format", "json", "order", "--q", "3", "abAB"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["order"], "3");
    let (code, _, _) = cli(&["--no-cache", "order", "--q", "3", "abz"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache-dir", cache, "--format", "json", "--samples", "30", "verify", "theorem2", "--q", "5"];
    let (code, first, _) = cli(&args);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(first.trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["claim"], "proved");
    assert_eq!(v["seed"], 2024);
    let mut single = vec!["--jobs", "1"];
    single.extend_from_slice(&args);
    let (_, second, _) = cli(&single);
    assert_eq!(first, second, "reports depend on the thread count or the cache state");

    let (code, out, _) = cli(&["--cache-dir", cache, "verify", "lemma3", "--q", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("pass"));

    // prime powers are experimental: failures are reported, not fatal
    let (code, out, _) = cli(&["--cache-dir", cache, "--samples", "30", "--format", "json", "verify", "theorem2", "--q", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"claim\":\"experimental\""));

    let (code, _, err) = cli(&["verify", "lemma4x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown result id"));
}

#[test]
fn config_file_feeds_the_suites() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solvmat.toml");
    std::fs::write(&path, "q = [2]\nformat = \"json\"\n[suite]\nseed = 11\nsolvability_samples = 5\nwitness_budget = 10\n").unwrap();
    let (code, out, _) = cli(&["--no-cache", "--config", path.to_str().unwrap(), "verify", "lemma8"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["q"], 2);
    assert_eq!(v["bound_k"], 2);
    std::fs::write(&path, "bogus = 1\n").unwrap();
    let (code, _, _) = cli(&["--config", path.to_str().unwrap(), "ring", "x"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "status", "--q", "3"]);
    assert!(out.contains("absent"));
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "build", "--q", "3"]);
    assert!(out.contains("miss"));
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "status", "--q", "3"]);
    assert!(out.contains("valid") && !out.contains("absent"));

    // corrupt one file: it must be detected and rebuilt
    let victim = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&victim, "cyclotomic 3 3 6\n1 2 3\n").unwrap();
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "status", "--q", "3"]);
    assert!(out.contains("stale"), "{out}");
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "verify", "--q", "3"]);
    assert!(out.contains("replaced"), "{out}");
    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "verify", "--q", "3"]);
    assert!(!out.contains("replaced"), "{out}");

    let (_, out, _) = cli(&["--cache-dir", cache, "cache", "clear"]);
    assert!(out.contains("removed 2"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_solvmat");
    let ok = Command::new(bin).args(["ring", "x"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let usage = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify"));
}
