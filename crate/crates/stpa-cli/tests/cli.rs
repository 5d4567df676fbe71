//! Black-box tests of the `stpa` binary: exit codes, stream separation, and
//! byte-level agreement with the library emitters.

use std::path::PathBuf;
use std::process::Command;

use stpa_core::corpus::load_corpus;
use stpa_core::{emit_csv_matrix, emit_json, ReportBundle};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn stpa(args: &[&str]) -> Run {
    stpa_env(args, &[])
}

fn stpa_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut command = Command::new(env!("CARGO_BIN_EXE_stpa"));
    command.args(args);
    for (key, value) in env {
        command.env(key, value);
    }
    let output = command.output().expect("binary runs");
    Run {
        code: output.status.code().expect("no signal"),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

fn corpus_path() -> String {
    format!("{}/../../corpus/gcdc.stpa", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    let path = format!("{}/../../corpus/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("golden file present")
}

// -- check -------------------------------------------------------------------

#[test]
fn check_corpus_succeeds_with_summary_on_stderr() {
    let run = stpa(&["check", &corpus_path()]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.is_empty(), "diagnostics belong on stderr");
    assert!(run.stderr.contains("0 errors"), "stderr: {}", run.stderr);
}

#[test]
fn check_missing_file_exits_2() {
    let run = stpa(&["check", "no/such/file.stpa"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("cannot read"), "stderr: {}", run.stderr);
}

#[test]
fn check_syntax_error_exits_2_with_span() {
    let path = fixture("bad_syntax.stpa");
    let run = stpa(&["check", &path]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains(&path), "span names the file");
    assert!(run.stderr.contains("expected"), "stderr: {}", run.stderr);
}

#[test]
fn check_dangling_reference_exits_1() {
    let run = stpa(&["check", &fixture("bad_dangling.stpa")]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("E001"), "stderr: {}", run.stderr);
    assert!(run.stderr.contains("`A9`"), "stderr: {}", run.stderr);
}

#[test]
fn strict_turns_warnings_into_failure() {
    let lax = stpa(&["check", &corpus_path()]);
    assert_eq!(lax.code, 0);
    let strict = stpa(&["check", &corpus_path(), "--strict"]);
    assert_eq!(strict.code, 1);
}

#[test]
fn strict_passes_on_a_finding_free_model() {
    let run = stpa(&["check", &fixture("clean_small.stpa"), "--strict"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stderr.contains("0 errors, 0 warnings"));
}

// -- usage -------------------------------------------------------------------

#[test]
fn unknown_subcommand_exits_3() {
    assert_eq!(stpa(&["frobnicate"]).code, 3);
}

#[test]
fn unknown_flag_exits_3() {
    assert_eq!(stpa(&["check", &corpus_path(), "--fast"]).code, 3);
}

#[test]
fn help_and_version_exit_0() {
    let help = stpa(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("report"));
    assert_eq!(stpa(&["--version"]).code, 0);
}

// -- asil --------------------------------------------------------------------

#[test]
fn asil_rate_prints_the_level() {
    let run = stpa(&["asil", "--rate", "S3", "E4", "C3"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "D\n");

    let qm = stpa(&["asil", "--rate", "S1", "E1", "C1"]);
    assert_eq!(qm.stdout, "QM\n");
}

#[test]
fn asil_rate_rejects_malformed_and_out_of_range_tokens() {
    assert_eq!(stpa(&["asil", "--rate", "S3", "E4", "Cx"]).code, 3);
    assert_eq!(stpa(&["asil", "--rate", "S3", "C3", "E4"]).code, 3);
    assert_eq!(stpa(&["asil", "--rate", "S9", "E4", "C3"]).code, 3);
}

#[test]
fn asil_needs_exactly_one_of_rate_or_file() {
    assert_eq!(stpa(&["asil"]).code, 3);
    assert_eq!(
        stpa(&["asil", "--rate", "S3", "E4", "C3", &corpus_path()]).code,
        3
    );
}

#[test]
fn asil_file_mode_rates_every_uca() {
    let run = stpa(&["asil", &corpus_path()]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("UCA1: S3 E4 C3 -> D"));
    assert!(run.stdout.contains("UCA4: S2 E4 C3 -> C"));
    assert!(run.stdout.contains("UCA5: unrated"));
}

// -- trace and step2 ---------------------------------------------------------

#[test]
fn trace_walks_both_directions() {
    let run = stpa(&["trace", &corpus_path(), "--id", "UCA1"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("down:"));
    assert!(run.stdout.contains("H1 (hazard)"));
    assert!(run.stdout.contains("A1 (accident)"));
    assert!(run.stdout.contains("up:"));
    assert!(run.stdout.contains("SC8 (constraint)"));
}

#[test]
fn trace_unknown_id_exits_1() {
    let run = stpa(&["trace", &corpus_path(), "--id", "UCA99"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("UCA99"), "stderr: {}", run.stderr);
}

#[test]
fn step2_prints_all_eight_prompts() {
    let run = stpa(&["step2", &corpus_path(), "--uca", "UCA1"]);
    assert_eq!(run.code, 0);
    for (i, element) in [
        "controller_process_model",
        "control_algorithm",
        "actuator_or_control_path",
        "controlled_process",
        "sensor_or_measurement",
        "feedback_path",
        "communication_channel",
        "external_disturbance",
    ]
    .iter()
    .enumerate()
    {
        let line = format!("{}. {element}", i + 1);
        assert!(run.stdout.contains(&line), "missing `{line}`");
    }
    assert!(run.stdout.contains("recorded: CF1"));
    assert!(run.stdout.contains("recorded: CF2"));
}

#[test]
fn step2_unknown_uca_exits_1() {
    assert_eq!(stpa(&["step2", &corpus_path(), "--uca", "UCA99"]).code, 1);
}

// -- candidates and report ---------------------------------------------------

#[test]
fn candidates_prints_an_aligned_table() {
    let run = stpa(&["candidates", &corpus_path()]);
    assert_eq!(run.code, 0);
    let header = run.stdout.lines().next().expect("has a header");
    assert!(header.starts_with("action"));
    assert!(header.contains("wrong_duration"));
    assert_eq!(run.stdout.lines().count(), 14);
    assert!(run.stdout.contains("unsafe(UCA1)"));
}

#[test]
fn candidates_csv_equals_the_golden_matrix() {
    let run = stpa(&["candidates", &corpus_path(), "--csv"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, golden("matrix.csv"));
}

#[test]
fn report_json_is_byte_equal_to_the_library_emitter() {
    let run = stpa(&["report", &corpus_path(), "--format", "json"]);
    assert_eq!(run.code, 0);
    let bundle = ReportBundle::from_model(load_corpus());
    assert_eq!(run.stdout, emit_json(&bundle));
}

#[test]
fn report_md_matches_the_golden() {
    let run = stpa(&["report", &corpus_path(), "--format", "md"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, golden("report.md"));
}

#[test]
fn report_out_writes_the_named_file() {
    let dir = std::env::temp_dir().join(format!("stpa-cli-out-{}", std::process::id()));
    let run = stpa(&[
        "report",
        &corpus_path(),
        "--format",
        "csv",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.is_empty(), "payload went to the file");
    let written = PathBuf::from(&dir).join("matrix.csv");
    let content = std::fs::read_to_string(&written).expect("file written");
    let bundle = ReportBundle::from_model(load_corpus());
    assert_eq!(content, emit_csv_matrix(&bundle));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_requires_a_format() {
    assert_eq!(stpa(&["report", &corpus_path()]).code, 3);
}

// -- color control -----------------------------------------------------------

#[test]
fn no_color_flag_and_env_are_equivalent() {
    let plain = stpa(&["check", &fixture("bad_dangling.stpa")]);
    let flagged = stpa(&["check", &fixture("bad_dangling.stpa"), "--no-color"]);
    let env = stpa_env(
        &["check", &fixture("bad_dangling.stpa")],
        &[("STPA_NO_COLOR", "1")],
    );
    // Stderr here is a pipe, so auto-detection already disables color; the
    // explicit switches must agree with it byte for byte.
    assert_eq!(plain.stderr, flagged.stderr);
    assert_eq!(plain.stderr, env.stderr);
    assert!(!plain.stderr.contains('\x1b'), "no escape codes on a pipe");
}
