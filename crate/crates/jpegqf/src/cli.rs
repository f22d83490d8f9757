//! The command-line surface as a library: a validated request, a pure
//! runner returning the rendered report plus exit status, and the exit-code
//! protocol.
//!
//! Exit codes are the primary interface — scripts can run at verbosity 0 and
//! read nothing but the status:
//!
//! * `1..=100`  — the identified quality factor itself
//! * `101`      — no standard quality admits the observed tables
//! * `102`      — candidates existed but none matched step for step
//! * `200`      — the file could not be read or parsed, or the request was
//!   invalid
//!
//! Verbosity only changes the rendered text, never the status.

use std::io::Read;

use serde_json::json;

use crate::error::{Error, Result};
use crate::identify::{self, ChannelMask, IdentificationOutcome, TablePair};
use crate::ijg::QualityFactor;
use crate::jpeg;

pub const EXIT_NO_CANDIDATE: u8 = 101;
pub const EXIT_MISMATCH: u8 = 102;
pub const EXIT_FILE_ERROR: u8 = 200;

/// Process exit status, one variant per protocol class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExitStatus {
    /// Identified exactly; the code is the quality factor.
    Quality(QualityFactor),
    NoCandidate,
    Mismatch,
    /// Unreadable or unparseable input, or an invalid request.
    FileError,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            Self::Quality(q) => q.get(),
            Self::NoCandidate => EXIT_NO_CANDIDATE,
            Self::Mismatch => EXIT_MISMATCH,
            Self::FileError => EXIT_FILE_ERROR,
        }
    }

    pub fn from_outcome(outcome: &IdentificationOutcome) -> Self {
        match outcome {
            IdentificationOutcome::Exact(q) => Self::Quality(*q),
            IdentificationOutcome::CandidateMismatch { .. } => Self::Mismatch,
            IdentificationOutcome::NoCandidate { .. } => Self::NoCandidate,
        }
    }
}

/// A validated invocation: which files, which channels, how much text.
#[derive(Clone, Debug)]
pub struct CliRequest {
    paths: Vec<String>,
    mask: ChannelMask,
    verbosity: u8,
    json: bool,
}

impl CliRequest {
    /// `paths` must be non-empty (`"-"` means standard input); verbosity is
    /// 0 (silent), 1 (one line per file) or 2 (full report).
    pub fn new(paths: Vec<String>, mask: ChannelMask, verbosity: u8, json: bool) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::InvalidArgument("no input files".to_string()));
        }
        if verbosity > 2 {
            return Err(Error::InvalidArgument(format!(
                "verbosity {verbosity} not in 0..=2"
            )));
        }
        Ok(Self { paths, mask, verbosity, json })
    }

    pub fn paths(&self) -> &[String] {
        &self.paths
    }

    pub fn mask(&self) -> ChannelMask {
        self.mask
    }

    pub fn verbosity(&self) -> u8 {
        self.verbosity
    }

    pub fn json(&self) -> bool {
        self.json
    }
}

/// What a run produced: the overall exit status and everything to print on
/// standard output.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub status: ExitStatus,
    pub output: String,
}

/// Process every requested file in order. The overall status is 200 if any
/// file failed to read or parse, otherwise the first file's status.
pub fn run(request: &CliRequest) -> RunReport {
    let mut output = String::new();
    let mut first: Option<ExitStatus> = None;
    let mut failed = false;
    for path in request.paths() {
        let (status, text) = process_one(path, request);
        output.push_str(&text);
        failed |= status == ExitStatus::FileError;
        first.get_or_insert(status);
    }
    let status = if failed {
        ExitStatus::FileError
    } else {
        first.expect("request validation guarantees at least one path")
    };
    RunReport { status, output }
}

fn process_one(path: &str, request: &CliRequest) -> (ExitStatus, String) {
    let analysis = read_input(path).and_then(|bytes| {
        let pair = jpeg::extract_tables(&bytes)?;
        let outcome = identify::identify(&pair, request.mask())?;
        Ok((pair, outcome))
    });
    match analysis {
        Ok((pair, outcome)) => {
            let status = ExitStatus::from_outcome(&outcome);
            let text = if request.json() {
                json_line(path, &outcome)
            } else {
                render_text(path, &pair, request.mask(), &outcome, request.verbosity())
            };
            let text = if request.verbosity() == 0 { String::new() } else { text };
            (status, text)
        }
        Err(e) => {
            let text = match (request.verbosity(), request.json()) {
                (0, _) => String::new(),
                (_, true) => {
                    let line = json!({
                        "path": path,
                        "exit": EXIT_FILE_ERROR,
                        "outcome": "error",
                        "error": e.to_string(),
                    });
                    format!("{line}\n")
                }
                _ => format!("{path}: error: {e}\n"),
            };
            (ExitStatus::FileError, text)
        }
    }
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut bytes = Vec::new();
        std::io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|source| Error::Io { path: path.to_string(), source })?;
        return Ok(bytes);
    }
    std::fs::read(path).map_err(|source| Error::Io { path: path.to_string(), source })
}

/// Render just the outcome at the given verbosity: nothing at 0, a single
/// summary line at 1, and the summary plus per-step details at 2.
pub fn format_report(outcome: &IdentificationOutcome, verbosity: u8) -> String {
    if verbosity == 0 {
        return String::new();
    }
    let mut text = String::new();
    match outcome {
        IdentificationOutcome::Exact(q) => {
            text.push_str(&format!("quality factor {q}\n"));
            if verbosity >= 2 {
                text.push_str("  every selected step matches\n");
            }
        }
        IdentificationOutcome::CandidateMismatch { quality, diffs } => {
            text.push_str(&format!(
                "no exact match: candidate {quality} differs in {} step(s)\n",
                diffs.len()
            ));
            if verbosity >= 2 {
                for diff in diffs {
                    text.push_str(&format!("  {diff}\n"));
                }
            }
        }
        IdentificationOutcome::NoCandidate { interval } => {
            text.push_str("no standard quality factor admits these tables\n");
            if verbosity >= 2 {
                text.push_str(&format!(
                    "  no standard scale value lies in {interval}\n"
                ));
            }
        }
    }
    text
}

fn render_text(
    path: &str,
    pair: &TablePair,
    mask: ChannelMask,
    outcome: &IdentificationOutcome,
    verbosity: u8,
) -> String {
    match verbosity {
        0 => String::new(),
        1 => format!("{path}: {}", format_report(outcome, 1)),
        _ => {
            let mut text = format!("{path}:\n");
            for channel in mask.channels() {
                let matrix = pair
                    .get(channel)
                    .expect("identification succeeded, so selected tables exist");
                text.push_str(&format!("  {channel} table:\n"));
                for line in matrix.to_string().lines() {
                    text.push_str(&format!("    {line}\n"));
                }
            }
            let interval = identify::narrow(pair, mask)
                .expect("identification succeeded, so narrowing does too");
            text.push_str(&format!("  scale interval: {interval}\n"));
            let found = identify::candidates(&interval);
            if found.is_empty() {
                text.push_str("  candidates: none\n");
            } else {
                let list: Vec<String> = found.iter().map(|q| q.to_string()).collect();
                text.push_str(&format!("  candidates: {}\n", list.join(", ")));
            }
            for line in format_report(outcome, 2).lines() {
                text.push_str(&format!("  {line}\n"));
            }
            text
        }
    }
}

fn json_line(path: &str, outcome: &IdentificationOutcome) -> String {
    let mut line = json!({
        "path": path,
        "exit": ExitStatus::from_outcome(outcome).code(),
    });
    match outcome {
        IdentificationOutcome::Exact(q) => {
            line["outcome"] = json!("exact");
            line["quality"] = json!(q.get());
        }
        IdentificationOutcome::CandidateMismatch { quality, diffs } => {
            line["outcome"] = json!("candidate-mismatch");
            line["quality"] = json!(quality.get());
            line["diffs"] = diffs
                .iter()
                .map(|d| {
                    json!({
                        "channel": d.channel.to_string(),
                        "row": d.row,
                        "col": d.col,
                        "observed": d.observed,
                        "expected": d.expected,
                    })
                })
                .collect();
        }
        IdentificationOutcome::NoCandidate { interval } => {
            line["outcome"] = json!("no-candidate");
            line["interval"] = json!({
                "lo": interval.lo().to_string(),
                "hi": interval.hi().map(|h| h.to_string()),
            });
        }
    }
    format!("{line}\n")
}
