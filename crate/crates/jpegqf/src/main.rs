use std::process::exit;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser};

use jpegqf::cli::{self, CliRequest, EXIT_FILE_ERROR};
use jpegqf::ChannelMask;

/// Identify the quality factor behind a JPEG file's quantization tables.
///
/// The exit status carries the answer: the quality factor itself (1-100)
/// when the tables match a standard one exactly, 101 when no standard
/// quality admits them, 102 when a candidate existed but some steps
/// disagree, and 200 for unreadable or unparseable input.
#[derive(Parser)]
#[command(name = "jpegqf", version, group = ArgGroup::new("input").args(["path", "batch"]).required(true))]
struct Args {
    /// JPEG file to inspect, or '-' for standard input
    #[arg(value_name = "PATH")]
    path: Option<String>,

    /// Channels to compare: 1 luminance, 2 chrominance, 3 both
    #[arg(value_name = "CHANNEL", value_parser = clap::value_parser!(u8).range(1..=3))]
    channel_pos: Option<u8>,

    /// Verbosity: 0 exit status only, 1 one line, 2 full report
    #[arg(value_name = "VERBOSITY", value_parser = clap::value_parser!(u8).range(0..=2))]
    verbosity_pos: Option<u8>,

    /// Channels to compare (flag form, for --batch runs)
    #[arg(
        short = 'c',
        long = "channel",
        value_name = "N",
        conflicts_with = "channel_pos",
        value_parser = clap::value_parser!(u8).range(1..=3)
    )]
    channel_flag: Option<u8>,

    /// Verbosity (flag form, for --batch runs)
    #[arg(
        short = 'v',
        long = "verbosity",
        value_name = "N",
        conflicts_with = "verbosity_pos",
        value_parser = clap::value_parser!(u8).range(0..=2)
    )]
    verbosity_flag: Option<u8>,

    /// Process several files in order; the run exits 200 if any file fails,
    /// otherwise with the first file's status
    #[arg(long, value_name = "FILE", num_args = 1..)]
    batch: Vec<String>,

    /// Emit one JSON object per file instead of text
    #[arg(long)]
    json: bool,
}

fn main() {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => i32::from(EXIT_FILE_ERROR),
            };
            let _ = e.print();
            exit(code);
        }
    };

    let channel = args.channel_flag.or(args.channel_pos).unwrap_or(3);
    let verbosity = args.verbosity_flag.or(args.verbosity_pos).unwrap_or(1);
    let paths = if args.batch.is_empty() {
        vec![args.path.expect("the input group requires a path")]
    } else {
        args.batch
    };

    let request = ChannelMask::from_arg(channel)
        .and_then(|mask| CliRequest::new(paths, mask, verbosity, args.json));
    let request = match request {
        Ok(request) => request,
        Err(e) => {
            eprintln!("error: {e}");
            exit(i32::from(EXIT_FILE_ERROR));
        }
    };

    let report = cli::run(&request);
    print!("{}", report.output);
    exit(i32::from(report.status.code()));
}
