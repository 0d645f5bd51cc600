//! Command-line runner for divisor-workbench scenario files.
//!
//! Exit codes: 0 — every check passed; 1 — at least one check failed or
//! errored; 2 — the scenario could not be parsed or validated (or the
//! arguments were unusable).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use divisor_workbench::workbench::{paper_suite, parse_scenario, run_suite, Report};

#[derive(Parser)]
#[command(
    name = "divisor-workbench",
    version,
    about = "Exact intersection-theory checks from JSON scenario files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a scenario file and check every object and reference.
    Validate {
        /// Path to a scenario JSON file.
        file: PathBuf,
    },
    /// Run every check in a scenario file and print a report.
    Run {
        /// Path to a scenario JSON file.
        file: PathBuf,
        /// Report format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the built-in verification suite over a range of n.
    PaperSuite {
        /// Smallest n to cover (must be at least 5).
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        /// Largest n to cover.
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Report format.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_scenario(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => {
            let text = match read_scenario(&file) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            match parse_scenario(&text) {
                Ok(scenario) => {
                    println!(
                        "ok: {} objects, {} checks",
                        scenario.objects.len(),
                        scenario.checks.len()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Run { file, format } => {
            let text = match read_scenario(&file) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let report = match parse_scenario(&text).and_then(|s| run_suite(&s)) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            emit(&report, format)
        }
        Command::PaperSuite {
            n_min,
            n_max,
            format,
        } => match paper_suite(n_min, n_max) {
            Ok(report) => emit(&report, format),
            Err(e) => fail(e),
        },
    }
}
