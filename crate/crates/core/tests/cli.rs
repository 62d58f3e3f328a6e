//! End-to-end tests that drive the compiled `colorhodge` binary through its
//! public command-line interface, checking output text and exit codes.

use std::io::Write;
use std::process::{Command, Output};

const K3: &str = r#"{"n": 3, "graphs": [[[1,2],[1,3],[2,3]]]}"#;
const PAIR: &str = r#"{"n": 4, "graphs": [[[1,2]],[[3,4]]]}"#;

fn write_input(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("create temp file");
    file.write_all(contents.as_bytes()).expect("write temp file");
    file
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorhodge"))
        .args(args)
        .output()
        .expect("spawn colorhodge")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn verify_theorem_on_the_disjoint_pair_succeeds() {
    let input = write_input(PAIR);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "verify",
        "theorem",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("all match: yes"), "stdout: {text}");
    assert!(text.contains("input:"), "stdout: {text}");
}

#[test]
fn chromatic_prints_the_triangle_polynomial() {
    let input = write_input(K3);
    let out = run(&["--input", input.path().to_str().unwrap(), "chromatic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("χ(λ) = λ^3 - 3λ^2 + 2λ"),
        "stdout: {text}"
    );
}

#[test]
fn chromatic_check_against_brute_force_passes() {
    let input = write_input(K3);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "--format",
        "csv",
        "chromatic",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("lambda,evaluated,brute,match\n"), "stdout: {text}");
    assert!(text.contains("3,6,6,true"), "stdout: {text}");
    assert!(!text.contains("false"), "stdout: {text}");
}

#[test]
fn a_corrupted_expected_value_fixture_fails_with_exit_one() {
    let input = write_input(PAIR);
    let fixture = write_input("[9, 9, 9, 9]");
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "verify",
        "theorem",
        "--expect",
        fixture.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("expected-value fixture mismatch"),
        "stdout: {text}"
    );
}

#[test]
fn a_matching_expected_value_fixture_passes() {
    let input = write_input(PAIR);
    let fixture = write_input("[0, 1, 0, 0]");
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "verify",
        "theorem",
        "--expect",
        fixture.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_json_reports_the_line_on_stderr_with_exit_two() {
    let input = write_input("{\"n\": 3,\n  \"graphs\": [[[1,2]\n}");
    let out = run(&["--input", input.path().to_str().unwrap(), "homology"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line"), "stderr: {err}");
}

#[test]
fn missing_input_flag_is_a_usage_error() {
    let out = run(&["complex"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing --input"), "stderr: {}", stderr(&out));
}

#[test]
fn idempotents_beyond_the_order_guard_exits_three() {
    let out = run(&["idempotents", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("k = 9"), "stderr: {}", stderr(&out));
}

#[test]
fn idempotents_table_lists_every_descent_class() {
    let out = run(&["idempotents", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("descents"), "stdout: {text}");
    assert!(text.contains("1/3"), "stdout: {text}");
}

#[test]
fn machine_formats_are_byte_deterministic() {
    let input = write_input(K3);
    let args = [
        "--input",
        input.path().to_str().unwrap(),
        "--format",
        "csv",
        "hodge",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).starts_with("kind,degree,piece,dimension\n"));
}

#[test]
fn quiet_suppresses_the_wall_time_line() {
    let input = write_input(K3);
    let noisy = run(&["--input", input.path().to_str().unwrap(), "homology"]);
    let quiet = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "--quiet",
        "homology",
    ]);
    assert!(stdout(&noisy).contains("wall-time:"));
    assert!(!stdout(&quiet).contains("wall-time:"));
}

#[test]
fn help_exits_zero_and_lists_subcommands() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for sub in ["chromatic", "complex", "homology", "hodge", "verify", "scan", "idempotents"] {
        assert!(text.contains(sub), "help should mention {sub}: {text}");
    }
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_guard_on_n_exits_three() {
    let input = write_input(K3);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "--max-n",
        "2",
        "hodge",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("guard"), "stderr: {}", stderr(&out));
}

#[test]
fn scan_is_deterministic_for_a_fixed_seed() {
    let args = [
        "--format",
        "csv",
        "--max-n",
        "3",
        "scan",
        "--max-m",
        "2",
        "--samples",
        "4",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_corollary_reports_both_readings_for_the_pair() {
    let input = write_input(PAIR);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "--format",
        "csv",
        "verify",
        "corollary",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("top,0,"), "stdout: {text}");
    assert!(text.contains("literal,1,"), "stdout: {text}");
}

#[test]
fn verify_jonsson_accepts_the_triangle() {
    let input = write_input(K3);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "verify",
        "jonsson",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("all match: yes"), "stdout: {text}");
}

#[test]
fn verify_hanlon_rejects_a_sequence_input() {
    let input = write_input(PAIR);
    let out = run(&[
        "--input",
        input.path().to_str().unwrap(),
        "verify",
        "hanlon",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("single graph"),
        "stderr: {}",
        stderr(&out)
    );
}
