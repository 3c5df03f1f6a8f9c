//! `fpcheb`: every experiment as one reproducible command.

mod args;
mod commands;
mod output;
mod selftest;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::output::{CliError, Emitted};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { output::EXIT_VALIDATION } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Emitted { violation: None }) => ExitCode::SUCCESS,
        Ok(Emitted { violation: Some(msg) }) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(output::EXIT_INVARIANT)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Emitted, CliError> {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Forge(a) => commands::forge(a, g)?,
        Command::Scaling(a) => commands::scaling(a, g)?,
        Command::Census(a) => commands::census(a, g)?,
        Command::Charsum(a) => commands::charsum(a, g)?,
        Command::Complete(a) => commands::complete(a, g)?,
        Command::Cubic(a) => commands::cubic(a, g)?,
        Command::Chowla(a) => commands::chowla(a, g)?,
        Command::Divsum(a) => commands::divsum(a, g)?,
        Command::Trinomials(a) => commands::trinomials(a, g)?,
        Command::Morse(a) => commands::morse(a, g)?,
        Command::Badset(a) => commands::badset(a, g)?,
        Command::Selftest => selftest::run(g)?,
    };
    out.write(cli.command.name(), g)
}
