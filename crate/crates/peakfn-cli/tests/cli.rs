//! End-to-end tests of the `peakfn` binary: golden outputs, exit codes, JSON
//! round trips, and cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn peakfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakfn"))
        .args(args)
        .env_remove("PEAKFN_CACHE_DIR")
        .env_remove("PEAKFN_JOBS")
        .output()
        .expect("binary runs")
}

fn peakfn_with_cache(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakfn"))
        .args(args)
        .env("PEAKFN_CACHE_DIR", dir)
        .env_remove("PEAKFN_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn golden_compute_outputs() {
    let out = peakfn(&["peaks", "316245"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Des={1,3} Peak={3}");

    let out = peakfn(&["rn", "4", "--patterns", "1234", "--basis", "Q"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "7*Q(4) + 8*Q(3,1)");

    let out = peakfn(&["rn", "2", "--patterns", "132", "--basis", "Q"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2*Q(2)");

    let out = peakfn(&["search", "asymmetry", "--patterns", "132", "--max-n", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "n=5");

    let out = peakfn(&[
        "peak-equiv",
        "--a",
        "213,231",
        "--b",
        "213,132",
        "--max-n",
        "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");

    let out = peakfn(&["insert", "--sw", "4612537"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "R=1,2,3,7/4,5/6\nS=1,2,3',7/4,5/6");

    let out = peakfn(&["insert", "--rsk", "4612537"]);
    assert_eq!(stdout(&out).trim(), "P=1,2,3,7/4,5/6\nQ=1,2,5,7/3,4/6");

    let out = peakfn(&["schurq", "(3,1)"]);
    assert_eq!(stdout(&out).trim(), "1*K({2}) + 1*K({3})");

    let out = peakfn(&[
        "rn",
        "6",
        "--patterns",
        "1234,1243,2413,3142,3412,4123",
        "--basis",
        "Q",
        "--format",
        "latex",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        "10Q_{(6)}+12Q_{(5,1)}+8Q_{(4,2)}-Q_{(3,2,1)}"
    );
}

#[test]
fn trace_output_is_stable() {
    let out = peakfn(&["insert", "--sw", "--trace", "321"]);
    assert_eq!(
        stdout(&out).trim(),
        "place 3 @(1,1)\n\
         col-bump 3←2 @(1,1)\n\
         place 3 @(1,2)\n\
         col-bump 2←1 @(1,1)\n\
         col-bump 3←2 @(1,2)\n\
         place 3 @(1,3)\n\
         R=1,2,3\n\
         S=1,2',3'"
    );
}

#[test]
fn exit_codes() {
    // 0: success.
    assert_eq!(peakfn(&["peaks", "1"]).status.code(), Some(0));
    // 2: usage errors, both from the argument parser and from domain parsing.
    assert_eq!(peakfn(&["peaks"]).status.code(), Some(2));
    assert_eq!(peakfn(&["peaks", "341"]).status.code(), Some(2));
    assert_eq!(peakfn(&["rn", "3", "--basis", "X"]).status.code(), Some(2));
    assert_eq!(peakfn(&["insert", "321"]).status.code(), Some(2));
    assert_eq!(
        peakfn(&["verify", "table1", "--max-n", "2"]).status.code(),
        Some(2)
    );
    // 3: a Schur Q expansion was requested but does not exist.
    let out = peakfn(&["rn", "5", "--patterns", "132", "--basis", "Q"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Schur Q-expandable"));
}

#[test]
fn verify_suites_pass() {
    let out = peakfn(&["verify", "table1", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("table1: 93/93 checks passed"), "{text}");

    let out = peakfn(&["verify", "appendix", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("catalogued erratum"), "{text}");
    assert!(text.contains("appendix: 12/12 checks passed"), "{text}");

    let out = peakfn(&["verify", "shuffle", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_outputs_round_trip() {
    let out = peakfn(&[
        "rn",
        "4",
        "--patterns",
        "321",
        "--basis",
        "K",
        "--format",
        "json",
    ]);
    let expr: peakfn::qsym::QsymExpr = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(expr.degree(), 4);
    assert_eq!(serde_json::to_string(&expr).unwrap(), stdout(&out).trim());

    let out = peakfn(&[
        "rn",
        "4",
        "--patterns",
        "321",
        "--basis",
        "Q",
        "--format",
        "json",
    ]);
    let expansion: peakfn::schurq::SchurQExpansion =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(
        serde_json::to_string(&expansion).unwrap(),
        stdout(&out).trim()
    );

    let out = peakfn(&["peaks", "316245", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["des"], serde_json::json!([1, 3]));
    assert_eq!(value["peak"], serde_json::json!([3]));

    let out = peakfn(&[
        "conjecture",
        "--iota",
        "4",
        "--max-n",
        "3",
        "--format",
        "json",
    ]);
    let reports: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 3);
    assert_eq!(reports[2]["symmetric"], serde_json::json!(true));
}

#[test]
fn conjecture_rows() {
    let out = peakfn(&["conjecture", "--iota", "5", "--max-n", "6"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines
        .iter()
        .all(|l| l.contains("symmetric=true q_positive=true")));
    assert!(lines[5].ends_with("26*Q(6) + 59*Q(5,1) + 80*Q(4,2) + 16*Q(3,2,1)"));
}

#[test]
fn cache_hits_are_byte_identical_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "rn",
        "6",
        "--patterns",
        "1234",
        "--basis",
        "Q",
        "--format",
        "json",
    ];
    let cold = peakfn_with_cache(&args, dir.path());
    assert!(cold.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1, "one cache entry written");

    let warm = peakfn_with_cache(&args, dir.path());
    assert_eq!(cold.stdout, warm.stdout, "cache hit must be byte-identical");

    // A corrupted entry is ignored and rewritten.
    let path = files[0].as_ref().unwrap().path();
    std::fs::write(&path, "{\"n\": 999}").unwrap();
    let repaired = peakfn_with_cache(&args, dir.path());
    assert_eq!(cold.stdout, repaired.stdout);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"n\":6"), "cache entry rewritten: {text}");

    // The flag wins over the environment variable.
    let other = tempfile::tempdir().unwrap();
    let flag_dir = other.path().join("flagged");
    let out = Command::new(env!("CARGO_BIN_EXE_peakfn"))
        .args(args)
        .arg("--cache-dir")
        .arg(&flag_dir)
        .env("PEAKFN_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.exists(), "flag-selected cache dir is used");
}

#[cfg(unix)]
#[test]
fn piped_output_closes_cleanly() {
    use std::io::Read;
    use std::process::Stdio;
    // Reading one byte and dropping the pipe must not produce a panic
    // backtrace from the writer.
    let mut child = Command::new(env!("CARGO_BIN_EXE_peakfn"))
        .args(["verify", "table1", "--max-n", "6"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut one = [0u8; 1];
    child.stdout.take().unwrap().read_exact(&mut one).unwrap();
    let status = child.wait().unwrap();
    let mut stderr = String::new();
    child
        .stderr
        .take()
        .unwrap()
        .read_to_string(&mut stderr)
        .unwrap();
    assert!(!stderr.contains("panicked"), "{stderr}");
    let _ = status;
}
