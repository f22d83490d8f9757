//! Binary-level tests for the command grammar: positional and flag forms,
//! batch mode, JSON output, standard input, and usage-error handling.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use jpegqf::corpus::{write_minimal_jpeg, write_to_dir, FixtureSpec};
use jpegqf::ijg::{Channel, QualityFactor};

fn qf(v: u8) -> QualityFactor {
    QualityFactor::new(v).unwrap()
}

fn run_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jpegqf"))
        .args(args)
        .output()
        .expect("the jpegqf binary should spawn")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the binary should not be killed")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

struct Fixtures {
    _dir: tempfile::TempDir,
    qf75: String,
    qf90: String,
    mismatch: String,
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let specs = vec![
        FixtureSpec::standard(qf(75)),
        FixtureSpec::standard(qf(90)),
        FixtureSpec::standard(qf(75))
            .perturb(Channel::Luminance, 0, 0, 1)
            .unwrap(),
    ];
    let paths = write_to_dir(dir.path(), &specs).unwrap();
    let s = |i: usize| paths[i].display().to_string();
    Fixtures {
        qf75: s(0),
        qf90: s(1),
        mismatch: s(2),
        _dir: dir,
    }
}

#[test]
fn defaults_are_both_channels_one_line() {
    let fx = fixtures();
    let out = run_bin(&[&fx.qf75]);
    assert_eq!(exit_code(&out), 75);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("quality factor 75"), "{text}");
}

#[test]
fn flag_forms_match_the_positional_forms() {
    let fx = fixtures();
    let positional = run_bin(&[&fx.qf75, "1", "2"]);
    let flags = run_bin(&[&fx.qf75, "-c", "1", "-v", "2"]);
    assert_eq!(exit_code(&positional), 75);
    assert_eq!(exit_code(&flags), 75);
    assert_eq!(stdout(&positional), stdout(&flags));
}

#[test]
fn verbose_report_shows_only_selected_tables() {
    let fx = fixtures();
    let text = stdout(&run_bin(&[&fx.qf75, "1", "2"]));
    assert!(text.contains("luminance table:"), "{text}");
    assert!(!text.contains("chrominance table:"), "{text}");
    assert!(text.contains("scale interval:"), "{text}");
    assert!(text.contains("candidates: 75"), "{text}");
}

#[test]
fn mismatch_report_names_the_step() {
    let fx = fixtures();
    let out = run_bin(&[&fx.mismatch, "3", "2"]);
    assert_eq!(exit_code(&out), 102);
    let text = stdout(&out);
    assert!(text.contains("candidate 75"), "{text}");
    assert!(
        text.contains("luminance[0][0]: observed 9, expected 8"),
        "{text}"
    );
}

#[test]
fn stdin_dash_reads_the_stream() {
    let bytes = write_minimal_jpeg(&FixtureSpec::standard(qf(85)));
    let mut child = Command::new(env!("CARGO_BIN_EXE_jpegqf"))
        .args(["-", "3", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&bytes).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(exit_code(&out), 85);
    assert!(stdout(&out).contains("quality factor 85"));
}

#[test]
fn batch_processes_files_in_order() {
    let fx = fixtures();
    let out = run_bin(&["--batch", &fx.qf75, &fx.qf90]);
    assert_eq!(exit_code(&out), 75, "first file's status wins");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("quality factor 75"));
    assert!(lines[1].contains("quality factor 90"));
}

#[test]
fn batch_failure_dominates_the_exit_status() {
    let fx = fixtures();
    let out = run_bin(&["--batch", &fx.qf75, "/no/such/file.jpg", &fx.qf90]);
    assert_eq!(exit_code(&out), 200);
    assert_eq!(stdout(&out).lines().count(), 3, "all files still processed");
}

#[test]
fn batch_takes_channel_and_verbosity_flags() {
    let fx = fixtures();
    let out = run_bin(&["--batch", &fx.qf75, "--channel", "2", "--verbosity", "0"]);
    assert_eq!(exit_code(&out), 75);
    assert!(out.stdout.is_empty());
}

#[test]
fn json_mode_emits_one_parseable_line_per_file() {
    let fx = fixtures();
    let out = run_bin(&["--batch", &fx.qf75, &fx.mismatch, "--json"]);
    assert_eq!(exit_code(&out), 75, "the first file's status is the batch status");
    let text = stdout(&out);
    let values: Vec<serde_json::Value> = text
        .lines()
        .map(|line| serde_json::from_str(line).unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert_eq!(values[0]["outcome"], "exact");
    assert_eq!(values[0]["quality"], 75);
    assert_eq!(values[0]["exit"], 75);
    assert_eq!(values[1]["outcome"], "candidate-mismatch");
    assert_eq!(values[1]["exit"], 102);
    assert_eq!(values[1]["diffs"][0]["observed"], 9);
}

#[test]
fn usage_errors_exit_200() {
    let out = run_bin(&[]);
    assert_eq!(exit_code(&out), 200, "an input path is required");

    let fx = fixtures();
    let out = run_bin(&[&fx.qf75, "4", "1"]);
    assert_eq!(exit_code(&out), 200, "channel 4 is out of range");

    let out = run_bin(&[&fx.qf75, "0", "1"]);
    assert_eq!(exit_code(&out), 200, "channel 0 is out of range");

    let out = run_bin(&[&fx.qf75, "3", "5"]);
    assert_eq!(exit_code(&out), 200, "verbosity 5 is out of range");

    let out = run_bin(&[&fx.qf75, "3", "1", "--batch", &fx.qf90]);
    assert_eq!(exit_code(&out), 200, "positional path conflicts with --batch");
}

#[test]
fn help_exits_zero() {
    let out = run_bin(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("Usage"), "{text}");
    assert!(text.contains("CHANNEL"), "{text}");
}
