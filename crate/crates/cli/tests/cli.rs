use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn hsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn surrogate() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/anthropoid_surrogate.tsv")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn lookup_sr_at_infinity() {
    let out = hsc(&["lookup", "sr", "2", "inf", "--confidence", "0.95"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2.772");
}

#[test]
fn lookup_clamps_large_k_with_warning() {
    let clamped = hsc(&["lookup", "smm", "25", "10"]);
    let edge = hsc(&["lookup", "smm", "20", "10"]);
    assert!(clamped.status.success());
    assert_eq!(stdout(&clamped), stdout(&edge));
    assert!(stderr(&clamped).contains("locked at k = 20"));
}

#[test]
fn lookup_below_table_fails() {
    let out = hsc(&["lookup", "smm", "3", "3"]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("table starts at 5"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn lookup_rejects_bad_arguments() {
    assert!(!hsc(&["lookup", "tukey", "3", "10"]).status.success());
    assert!(!hsc(&["lookup", "sr", "3", "ten"]).status.success());
    assert!(!hsc(&["lookup", "sr", "3", "10", "-c", "0.9"])
        .status
        .success());
}

#[test]
fn short_row_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.tsv");
    std::fs::write(&input, "len\twid\nA\t1\t2\nA\t3\n").unwrap();
    let report = dir.path().join("report.html");
    let out = hsc(&[
        "code",
        "-i",
        input.to_str().unwrap(),
        "-f",
        "html",
        "-o",
        report.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert!(!report.exists());
}

#[test]
fn writes_every_requested_format() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = ["r.txt", "r.html", "m.nex"]
        .iter()
        .map(|n| dir.path().join(n))
        .collect();
    let input = surrogate();
    let out = hsc(&[
        "code",
        "--input",
        &input,
        "--format",
        "text",
        "--out",
        paths[0].to_str().unwrap(),
        "--format",
        "html",
        "--out",
        paths[1].to_str().unwrap(),
        "--format",
        "nexus",
        "--out",
        paths[2].to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("exceptional members Callicebus"));

    let text = std::fs::read_to_string(&paths[0]).unwrap();
    assert!(text.contains("Games and Howell"));
    let html = std::fs::read_to_string(&paths[1]).unwrap();
    assert!(html.starts_with("<!DOCTYPE html>"));
    let nexus = std::fs::read_to_string(&paths[2]).unwrap();
    assert!(nexus.contains("NCHAR=1;") && nexus.contains("SYMBOLS=\"012345\""));
}

#[test]
fn output_count_must_match_formats() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("a.txt");
    let input = surrogate();
    let out = hsc(&[
        "code",
        "-i",
        &input,
        "-f",
        "text",
        "-f",
        "nexus",
        "-o",
        single.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(!single.exists());
    assert!(!hsc(&["code", "-i", &input, "-f", "text", "-f", "nexus"])
        .status
        .success());
}

#[test]
fn reads_standard_input_and_is_deterministic() {
    let data = std::fs::read(surrogate()).unwrap();
    let run = || {
        let mut child = Command::new(env!("CARGO_BIN_EXE_hsc"))
            .args(["code", "-i", "-", "-f", "nexus"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        use std::io::Write;
        child.stdin.take().unwrap().write_all(&data).unwrap();
        child.wait_with_output().unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\tPan            5\n"));
}

#[test]
fn missing_input_file_fails() {
    let out = hsc(&["code", "-i", "/nonexistent/data.tsv"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("/nonexistent/data.tsv"));
}
