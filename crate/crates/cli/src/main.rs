use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gerbe_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap reports help and version through the error path
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let outcome = run(&cli);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(outcome.report.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
