use std::process::Command;

use frieze_core::cli::{run_from, DetOutput, MatrixOutput, SnfOutput, Status, VerifyOutput, ZigzagOutput, CHECK_NAMES};

const HEPTAGON: &str = r#"{"n":7,"diagonals":[[2,7],[3,6],[4,6]]}"#;
const PENTAGON: &str = r#"{"n":5,"diagonals":[[2,4],[2,5]]}"#;

fn run(args: &[&str]) -> frieze_core::cli::Outcome {
    run_from(std::iter::once("frieze").chain(args.iter().copied()))
}

#[test]
fn matrix_json_round_trips() {
    let out = run(&["matrix", "--json", HEPTAGON, "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let parsed: MatrixOutput = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(parsed.matrix[0], ["0", "1", "2", "4", "6", "2", "1"]);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out.stdout);
}

#[test]
fn determinant_with_custom_names() {
    let out = run(&["det", "--json", HEPTAGON, "--flavor", "x", "--names", "a,b,c,d", "--format", "json"]);
    assert_eq!(out.code, 0);
    let det: DetOutput = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(det.equal, Some(true));
    assert!(det.factored.contains("a^3*b^2*c*d"), "{}", det.factored);
    assert!(!det.expand.unwrap().contains("x1"));
}

#[test]
fn smith_form_of_heptagon() {
    let out = run(&["snf", "--json", HEPTAGON, "--format", "json"]);
    assert_eq!(out.code, 0);
    let snf: SnfOutput = serde_json::from_str(&out.stdout).unwrap();
    let text = serde_json::to_string(&snf).unwrap();
    assert!(text.contains("[1,1,1,1,2,2,6]"), "{text}");
}

#[test]
fn zigzag_on_pentagon() {
    let out = run(&["zigzag", "1", "3", "--json", PENTAGON, "--format", "json"]);
    assert_eq!(out.code, 0);
    let z: ZigzagOutput = serde_json::from_str(&out.stdout).unwrap();
    assert!(z.agrees);
    let bad = run(&["zigzag", "1", "9", "--json", PENTAGON]);
    assert_eq!(bad.code, 2);
}

#[test]
fn verify_all_pentagons() {
    let out = run(&["verify", "--all", "5", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: VerifyOutput = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v.total, v.passed, v.failed), (11, 11, 0));
    for r in &v.reports {
        let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    }
}

#[test]
fn fuzzing_is_caught() {
    let out = run(&["verify", "--json", HEPTAGON, "--fuzz", "--format", "json"]);
    assert_eq!(out.code, 1);
    let v: VerifyOutput = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v.failed, 1);
    assert!(v.reports[0].checks.iter().any(|c| c.status == Status::Fail));
}

#[test]
fn random_source_is_deterministic() {
    let a = run(&["matrix", "--random", "9", "42", "--flavor", "xq"]);
    let b = run(&["matrix", "--random", "9", "--seed", "42", "--flavor", "xq"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
    assert_ne!(a, run(&["matrix", "--random", "9", "43", "--flavor", "xq"]));
}

#[test]
fn input_errors_exit_with_two() {
    let crossing = run(&["matrix", "--json", r#"{"n":6,"diagonals":[[1,4],[2,5]]}"#]);
    assert_eq!(crossing.code, 2);
    assert!(crossing.stderr.contains("cross"));
    assert_eq!(run(&["matrix", "--json", "{not json"]).code, 2);
    assert_eq!(run(&["matrix"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn frieze_text_and_latex() {
    let text = run(&["frieze", "--json", PENTAGON, "--flavor", "arithmetic"]);
    assert_eq!(text.code, 0);
    assert_eq!(text.stdout.lines().filter(|l| l.starts_with("...")).count(), 4);
    let latex = run(&["frieze", "--json", PENTAGON, "--latex", "--names", "a,c,b"]);
    assert!(latex.stdout.contains("\\begin{array}"));
    assert!(latex.stdout.contains("\\mathbf{a + c + b}"), "{}", latex.stdout);
}

#[test]
fn binary_honours_guard_variable() {
    let bin = env!("CARGO_BIN_EXE_frieze");
    let blocked = Command::new(bin).args(["verify", "--all", "6"]).env("FRIEZE_GUARD_N", "5").output().unwrap();
    assert_eq!(blocked.status.code(), Some(2));
    let allowed = Command::new(bin).args(["verify", "--all", "4"]).env("FRIEZE_GUARD_N", "5").output().unwrap();
    assert_eq!(allowed.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&allowed.stdout).contains("3"));
}
