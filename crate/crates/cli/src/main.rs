use std::process::ExitCode;

use clap::Parser;

mod commands;
mod manifest;

use commands::{Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Numerical(_) => ExitCode::from(3),
            }
        }
    }
}
