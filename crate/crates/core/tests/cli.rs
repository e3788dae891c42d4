//! End-to-end tests of the command line binary: argument handling, exit
//! codes and report routing.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conesym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

const QUADRANT: &str = "amb_space 2\ncone 2\n0 1\n1 0\n";

#[test]
fn successful_job_prints_the_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("quadrant.in");
    write(&input, &format!("{}HilbertBasis\n", QUADRANT));
    let out = run(&[input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2 Hilbert basis elements:\n0 1\n1 0\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn parse_error_exits_one_with_a_located_message() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.in");
    write(&input, "amb_space 2\nconee 1\n1 0\n");
    let out = run(&[input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error at line 2"), "stderr: {}", err);
    assert!(err.contains("unknown keyword `conee`"), "stderr: {}", err);
}

#[test]
fn missing_input_file_exits_one() {
    let out = run(&["/nonexistent/path/job.in"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cannot read"));
}

#[test]
fn failed_goal_exits_two_but_still_reports_the_others() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("quadrant.in");
    write(&input, &format!("{}EuclideanAutomorphisms\nHilbertBasis\n", QUADRANT));
    let out = run(&[input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Euclidean automorphism group: error:"));
    assert!(text.contains("2 Hilbert basis elements:"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("quadrant.in");
    let report = dir.path().join("report.txt");
    write(&input, &format!("{}HilbertBasis\n", QUADRANT));
    let out = run(&[input.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&report).unwrap(), "2 Hilbert basis elements:\n0 1\n1 0\n");
}

#[test]
fn iso_check_target_resolves_relative_to_the_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("first.in");
    let other = dir.path().join("second.in");
    write(&input, &format!("{}IsoCheck second.in\n", QUADRANT));
    // the image of the quadrant under a shear; no goals of its own
    write(&other, "amb_space 2\ncone 2\n1 0\n1 1\n");
    // run from a different working directory to prove the path is taken
    // relative to the referring file
    let out = Command::new(env!("CARGO_BIN_EXE_conesym"))
        .arg(input.to_str().unwrap())
        .current_dir("/")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("isomorphic: true\nwitness:\n"), "got: {}", text);
}

#[test]
fn iso_check_against_a_missing_file_is_a_goal_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("first.in");
    write(&input, &format!("{}IsoCheck nowhere.in\n", QUADRANT));
    let out = run(&[input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("isomorphism check: error: io error: cannot read"));
}
