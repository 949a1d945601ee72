use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cpair_core::fixture::load_fixture;
use cpair_core::report::{run, RunOptions, Verb};

const EXIT_INPUT: u8 = 3;

/// Verify contact pair structures and their metrics.
///
/// Exit status: 0 all checks Verified, 2 some SampleVerified and none
/// Failed, 1 any Failed (or nothing applicable), 3 bad arguments or an
/// unreadable fixture.
#[derive(Debug, Parser)]
#[command(name = "cpair", version)]
struct Cli {
    /// One of: verify-pair, reeb, verify-structure, decomposable, compatible,
    /// associated, orthogonal, build-compatible, polarize, geodesy, killing,
    /// leaves, theorems, report.
    verb: Verb,
    /// Fixture JSON file, or `bundled:NAME` for a built-in fixture.
    fixture: PathBuf,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance for numeric checks.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Extra random sample points for chart fixtures.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Seed for the random sample points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include per-check timings in the JSON report.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let model = match load_fixture(&cli.fixture) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let opts = RunOptions { tol: cli.tol, samples: cli.samples, seed: cli.seed, timings: cli.timings };
    let report = run(cli.verb, &model, &opts);
    let json = report.to_json();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    if cli.verb == Verb::Report {
        if cli.out.is_none() {
            println!("{json}");
        }
    } else {
        print!("{}", report.summary());
    }
    ExitCode::from(report.exit_code() as u8)
}
