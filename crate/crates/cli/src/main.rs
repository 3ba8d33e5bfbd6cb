use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use coho_cli::{run, Cli, Settings};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match Settings::from_env() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let outcome = run(&cli, settings);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
