use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use lca_cli::commands::{self, Cli, EXIT_FLAGS};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_FLAGS as u8),
            };
        }
    };
    let outcome = commands::run(&cli);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.render(cli.format).as_bytes());
    ExitCode::from(outcome.code as u8)
}
