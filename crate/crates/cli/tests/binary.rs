use std::path::Path;
use std::process::{Command, Output};

fn askey(args: &[&str]) -> Output {
    askey_env(args, None)
}

fn askey_env(args: &[&str], digits: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_askey"));
    cmd.args(args).env_remove("ASKEY_DIGITS");
    if let Some(d) = digits {
        cmd.env("ASKEY_DIGITS", d);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_both_routes() {
    let out = askey(&["eval", "--family", "laguerre", "--alpha", "1", "--x", "2", "--n", "3", "--digits", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,series,recurrence");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("3,-1.3333333333333333333"), "{}", lines[4]);
}

#[test]
fn output_is_deterministic() {
    let args = ["expand", "--family", "mp", "--lambda", "1.5", "--phi", "1", "--x", "0.8", "--n", "5", "--mode", "twofreeab"];
    let first = askey(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(first.stdout, askey(&args).stdout);
}

#[test]
fn output_file_written_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let file = path.to_str().unwrap();
    let out = askey(&["limit", "--case", "jacobi-laguerre", "--n", "2", "--alpha", "1", "--xi", "2", "--output", file]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("param,error\n"));
    assert_eq!(text.lines().count(), 5);
    assert!(stderr(&out).contains("slope"));
}

fn assert_fails_cleanly(args: &[&str], code: i32, message: &str) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--output", path.to_str().unwrap()]);
    let out = askey(&full);
    assert_eq!(out.status.code(), Some(code), "{}", stderr(&out));
    assert!(stderr(&out).contains(message), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    assert!(!Path::new(&path).exists());
}

#[test]
fn usage_errors_exit_one_and_write_nothing() {
    assert_fails_cleanly(&["eval", "--family", "hermite", "--x", "1", "--n", "2", "--bogus", "1"], 1, "unknown flag --bogus");
    assert_fails_cleanly(&["expand", "--family", "mp", "--mode", "threefree", "--lambda", "1", "--x", "1", "--n", "3"], 1, "missing required flag --phi");
    assert_fails_cleanly(&["order", "--family", "krawtchouk", "--p", "1.5"], 1, "invalid value for --p: must be in (0,1)");
}

#[test]
fn computation_errors_exit_two_and_write_nothing() {
    assert_fails_cleanly(&["eval", "--family", "krawtchouk", "--size", "3", "--p", "0.5", "--x", "1", "--n", "5"], 2, "degree 5");
}

#[test]
fn config_file_with_flags_winning() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# hermite at one half\nfamily = hermite\nx = 0.5\nn = 4\ndigits = double\n").unwrap();
    let out = askey(&["eval", "--config", cfg.to_str().unwrap(), "--n", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "n,series,recurrence\n0,1,1\n1,1,1\n");
}

#[test]
fn environment_sets_default_precision() {
    let args = ["eval", "--family", "ultraspherical", "--gamma", "0.5", "--x", "0.3", "--n", "2"];
    let double = stdout(&askey_env(&args, Some("double")));
    let wide = stdout(&askey_env(&args, Some("40")));
    assert_ne!(double, wide);
    let explicit = stdout(&askey_env(&[&args[..], &["--digits", "40"]].concat(), Some("double")));
    assert_eq!(wide, explicit);
    let bad = askey_env(&args, Some("three"));
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    for extra in [&[][..], &["--digits", "30"][..], &["--digits", "double"][..]] {
        let out = askey(&[&["selftest"][..], extra].concat());
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).ends_with("0 failed\n"));
    }
}

#[test]
fn corrupted_oracle_fails_selftest() {
    let out = askey(&["selftest", "--corrupt", "jacobi"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("recurrence jacobi")), "{text}");
    assert!(!text.lines().any(|l| l.starts_with("FAIL") && l.contains("hermite")), "{text}");
}
