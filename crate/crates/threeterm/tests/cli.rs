//! Exit-code and output contracts of the command-line front end:
//! 0 computed verdict, 2 parse error, 3 validation error, 4 numeric
//! non-convergence.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_threeterm"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn check_exits_zero_on_both_verdicts() {
    let (code, stdout, _) = run(&["check", "--q1", "x^2-2x-5", "--q2", "x^2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: PASS"));
    assert!(stdout.contains("support: [-2.2360679775, -1] U [2.2360679775, 5]"));

    let (code, stdout, _) = run(&["check", "--q1", "-x^2+2x", "--q2", "5x^2-1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: FAIL"));
    assert!(stdout.contains("Q2(0) = -1"));
}

#[test]
fn parse_errors_exit_two() {
    let (code, _, stderr) = run(&["check", "--q1", "x^^2", "--q2", "x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error"));
    assert!(stderr.contains("position"));
}

#[test]
fn validation_errors_exit_three() {
    // Shared root: the pair must be coprime.
    let (code, _, stderr) = run(&["check", "--q1", "x-1", "--q2", "x-1"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("coprime"));

    // Q2 identically zero.
    let (code, _, stderr) = run(&["check", "--q1", "x", "--q2", "0"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("Q2"));

    // Constant Q1.
    let (code, _, _) = run(&["check", "--q1", "7", "--q2", "x"]);
    assert_eq!(code, 3);

    // Degenerate recurrence for gen: trailing zero polynomial.
    let (code, _, _) = run(&["gen", "--q", "x;0", "-n", "3"]);
    assert_eq!(code, 3);
}

#[test]
fn nonconvergence_exits_four() {
    let (code, _, stderr) = run(&[
        "zeros", "--q1", "x^2-2x-5", "--q2", "x^2", "-n", "6", "--max-iterations", "0",
    ]);
    assert_eq!(code, 4);
    assert!(stderr.contains("non-convergence"));
}

#[test]
fn gen_prints_exact_sequence() {
    let (code, stdout, _) = run(&["gen", "--q", "x^2-2x-5;x^2", "-n", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("P_0 = 1"));
    assert!(stdout.contains("P_1 = -x^2+2x+5"));
    assert!(stdout.contains("P_2 = x^4-4x^3-7x^2+20x+25"));
}

#[test]
fn zeros_method_flag_is_checked() {
    let (code, _, stderr) = run(&["zeros", "--q1", "x", "--q2", "1", "-n", "3", "--method", "magic"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("levels or expand"));
}

#[test]
fn verify_reports_consistency() {
    let (code, stdout, _) = run(&["verify", "--q1", "x", "--q2", "1", "--n-max", "8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("consistent: true"));
}
