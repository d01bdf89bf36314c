use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use runslab_cli::{args::Cli, run};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code)
}
