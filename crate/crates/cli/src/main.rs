use std::process::ExitCode;

use clap::Parser;
use qreading_cli::args::Cli;

fn main() -> ExitCode {
    // Usage errors from clap exit with status 2 here.
    let cli = Cli::parse();
    match qreading_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qreading: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
