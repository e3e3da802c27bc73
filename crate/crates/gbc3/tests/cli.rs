//! End-to-end tests of the `gbc3` binary: exit codes, output formats, the
//! key=value config file, and determinism of the CSV sweeps.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gbc3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbc3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn scratch_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gbc3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name)
}

fn cap2(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}

#[test]
fn classify_emits_json_and_exits_zero() {
    let out = gbc3(&["classify", "--config", "18"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["config"], 18);
    assert_eq!(doc["bits"], "010010");
    assert_eq!(doc["weakness_scope"], "all-predecessors");
    assert_eq!(doc["maximum_complete_sets"][0], serde_json::json!([1, 3]));
    assert_eq!(doc["tightness"]["case"], "open");
    assert_eq!(doc["degraded_sequences"].as_array().unwrap().len(), 7);
}

#[test]
fn bit_string_config_matches_decimal_id() {
    let by_id = gbc3(&["classify", "--config", "18"]);
    let by_bits = gbc3(&["classify", "--config", "010010"]);
    assert!(by_bits.status.success());
    assert_eq!(stdout(&by_id), stdout(&by_bits));
}

#[test]
fn out_of_range_config_is_usage_error() {
    let out = gbc3(&["classify", "--config", "64"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"), "stderr: {}", stderr(&out));
}

#[test]
fn unordered_noises_are_usage_error() {
    let out = gbc3(&["classify", "--N1", "0.5", "--N2", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn bad_base_and_zero_grid_are_usage_errors() {
    let out = gbc3(&["classify", "--base", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gbc3(&["inner", "--grid", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error_and_help_is_not() {
    let out = gbc3(&["classify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gbc3(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("classify"));
}

#[test]
fn bounds_csv_has_pinned_header_and_is_deterministic() {
    let args = ["bounds", "--config", "18", "--grid", "24", "--directions", "8"];
    let first = gbc3(&args);
    assert!(first.status.success(), "stderr: {}", stderr(&first));
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "mu1,mu2,mu3,inner_R1,inner_R2,inner_R3,inner_J,outer_t,gap"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8 + 3, "8 lattice directions plus the 3 axes");
    for row in &rows {
        let gap: f64 = row.split(',').next_back().unwrap().parse().unwrap();
        assert!(gap >= -1e-9, "negative gap in row {row}");
    }
    let second = gbc3(&args);
    assert_eq!(first.stdout, second.stdout, "rerun must be byte-identical");
}

#[test]
fn config_file_supplies_flags_and_explicit_flags_win() {
    let path = scratch_path("settings.cfg");
    std::fs::write(&path, "# sweep settings\nP = 5\ndirections = 1\n").unwrap();
    let file = path.to_str().unwrap();

    // Power comes from the file: the all-ones config's outer bound along
    // the first axis is the single-receiver capacity cap(P/N1).
    let out = gbc3(&["outer", "--config", "63", "--config-file", file]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let axis1 = text
        .lines()
        .skip(1)
        .find(|l| l.starts_with("1.00000000000,0,0,"))
        .expect("axis row present");
    let t: f64 = axis1.split(',').next_back().unwrap().parse().unwrap();
    assert!((t - cap2(5.0 / 0.2)).abs() <= 1e-9, "file P=5 should give cap(25), got {t}");

    // An explicit --P beats the file's P.
    let out = gbc3(&["outer", "--config", "63", "--config-file", file, "--P", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let axis1 = text
        .lines()
        .skip(1)
        .find(|l| l.starts_with("1.00000000000,0,0,"))
        .expect("axis row present");
    let t: f64 = axis1.split(',').next_back().unwrap().parse().unwrap();
    assert!((t - cap2(10.0 / 0.2)).abs() <= 1e-9, "flag P=10 should give cap(50), got {t}");

    // Unknown keys are rejected as usage errors.
    let bad = scratch_path("bad.cfg");
    std::fs::write(&bad, "powre = 10\n").unwrap();
    let out = gbc3(&["classify", "--config-file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown key"));
}

#[test]
fn out_flag_writes_file_and_leaves_stdout_empty() {
    let path = scratch_path("bounds.csv");
    let out = gbc3(&[
        "bounds",
        "--config",
        "0",
        "--grid",
        "12",
        "--directions",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(out.stdout.is_empty(), "stdout should be empty with --out");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("mu1,mu2,mu3,"));
    assert_eq!(written.lines().count(), 1 + 4 + 3);
}

#[test]
fn verify_passes_on_the_default_channel() {
    let out = gbc3(&["verify"]);
    assert!(out.status.success(), "stderr: {}\nstdout: {}", stderr(&out), stdout(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "five self-check suites");
    for line in lines {
        assert!(line.starts_with("suite "), "line: {line}");
        assert!(line.contains(": PASS"), "line: {line}");
    }
}

#[test]
fn report_all_lists_every_config() {
    let out = gbc3(&["report-all", "--grid", "12", "--directions", "4"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "config,bits,k_family,tightness,inner_sum,outer_sum,max_gap"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 64);
    assert!(rows[0].starts_with("0,000000,"));
    assert!(rows[63].starts_with("63,111111,"));
}

#[test]
fn index_demo_round_trips_cleanly() {
    let out = gbc3(&["index", "--config", "18", "--seed", "7"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("mutual pair {1,3}"), "text: {text}");
    assert!(text.contains("all round trips OK"), "text: {text}");
    assert!(!text.contains("MISMATCH"));
}
