mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::CliError;

/// Expressions such as `-t` or `-3/2*t` would be read as flags. A leading
/// space keeps them values; the expression parser ignores it.
fn protect_negative_expressions(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let mut chars = a.chars();
        let expression = chars.next() == Some('-')
            && chars.next().is_some_and(|c| c != '-' && (!c.is_ascii_alphabetic() || c == 't' || c == 's'));
        if expression {
            format!(" {a}")
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(protect_negative_expressions(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = cli.config.validate() {
        eprintln!("usage error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli.command, &cli.config) {
        Ok(outcome) => {
            print!("{}", commands::render(&cli.command, &cli.config, &outcome, cli.tsv));
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Compute(_)) => {
            eprintln!("{e}");
            let mut outcome = output::Outcome::default();
            outcome.fail("error", e.to_string());
            print!("{}", commands::render(&cli.command, &cli.config, &outcome, cli.tsv));
            ExitCode::from(1)
        }
    }
}
