mod args;
mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

/// What a command produced: a JSON document, its table rendering, notes for
/// stderr, and the exit code.
pub struct Report {
    pub json: serde_json::Value,
    pub table: String,
    pub notes: Vec<String>,
    pub code: u8,
}

/// A failure before any verdict: bad input (exit 2) or a numerical guard
/// (exit 3).
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn input(e: impl std::fmt::Display) -> Self {
        Self {
            message: e.to_string(),
            code: 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            for note in &report.notes {
                eprintln!("warning: {note}");
            }
            let text = match cli.common.format {
                // serde_json keeps object keys sorted.
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
                Format::Table => report.table,
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
