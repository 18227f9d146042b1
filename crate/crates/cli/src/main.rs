//! `hsbasis` command-line tool.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing identity, 2 on
//! usage errors and unreadable or inconsistent input.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Status;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::IdentityFailures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
