use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn u21(out: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_u21"));
    cmd.args(args).arg("--out").arg(out);
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("U21_")) {
        cmd.env_remove(k);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Path, command: &str) -> String {
    fs::read_to_string(out.join(format!("{command}.jsonl"))).expect("report written")
}

fn body(text: &str) -> String {
    text.lines().skip(1).collect::<Vec<_>>().join("\n")
}

#[test]
fn verify_passes_and_reports_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--suite", "padic", "--suite", "recursions", "--samples", "20"];
    let first = u21(dir.path(), &args, &[]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    let ra = report(dir.path(), "verify");
    let second = u21(dir.path(), &args, &[]);
    assert_eq!(second.status.code(), Some(0));
    let rb = report(dir.path(), "verify");
    assert!(ra.lines().next().unwrap().contains("\"kind\":\"header\""));
    assert_eq!(body(&ra), body(&rb));
    let names: Vec<String> = ra
        .lines()
        .filter_map(|l| serde_json::from_str::<serde_json::Value>(l).ok())
        .filter(|v| v["kind"] == "record")
        .map(|v| v["name"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(ra.lines().last().unwrap().contains("\"failed\":0"));
}

#[test]
fn failed_checks_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = u21(dir.path(), &["verify", "--suite", "group", "--precision", "4", "--samples", "5"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(dir.path(), "verify").contains("precision exhausted"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "--suite", "nonsense"][..],
        &["verify", "--p", "4"],
        &["classify", "--case", "bogus"],
        &["classify", "--case", "unramified-ps"],
        &["zeta", "--nu", "1/0", "--lambda", "2"],
    ] {
        let out = u21(dir.path(), args, &[]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = u21(dir.path(), &["verify"], &[("U21_PRECISION", "two")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_environment_override_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "p = 5\nseed = 11\nterms = 6\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let run = |extra: &[&str], env: &[(&str, &str)]| {
        let mut args = vec!["zeta", "--nu", "24", "--lambda", "32", "--q", "3", "--config", cfg];
        args.extend_from_slice(extra);
        let out = u21(dir.path(), &args, env);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let text = report(dir.path(), "zeta");
        let config: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
        let c = &config["config"];
        (c["p"].as_u64().unwrap(), c["seed"].as_u64().unwrap(), c["terms"].as_u64().unwrap())
    };
    assert_eq!(run(&[], &[]), (5, 11, 6));
    assert_eq!(run(&[], &[("U21_SEED", "5"), ("U21_P", "3")]), (3, 5, 6));
    assert_eq!(run(&["--seed", "9"], &[("U21_SEED", "5")]), (5, 9, 6));
}

#[test]
fn classify_and_eval_report_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = u21(dir.path(), &["classify", "--case", "ru3", "--c", "2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = report(dir.path(), "classify");
    assert!(text.contains("\"computed\":\"(1)/(1 - 2*X + X^2)\""));
    assert!(text.contains("\"computed\":\"9*X^2\""));
    let out = u21(dir.path(), &["eval", "--case", "ru2", "--op", "theta", "--at", "gamma_1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(dir.path(), "eval").contains("\"computed\":\"4\""));
    let out = u21(
        dir.path(),
        &["eval", "--case", "steinberg", "--op", "theta", "--at", "gamma_2", "--gamma-value", "-1/6"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(report(dir.path(), "eval").contains("\"computed\":\"-21/2\""));
}
