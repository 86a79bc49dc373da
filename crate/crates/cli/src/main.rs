mod args;
mod commands;
mod input;
mod report;
mod verify;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::args::Cli;
use crate::input::CliError;
use crate::report::RunReport;

fn fail(e: &CliError) -> ExitCode {
    let body = serde_json::json!({ "error": e.code(), "message": e.to_string() });
    eprintln!("{body}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    let start = Instant::now();
    let run = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let report = RunReport {
        command: run.command,
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: run.inputs,
        result: run.result,
        budget_spent: run.budget_spent,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                return fail(&CliError::Input(format!("cannot write {}: {e}", path.display())));
            }
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{}: {}", report.command, run.summary);
        }
        None => {
            let _ = writeln!(std::io::stdout(), "{json}");
        }
    }
    ExitCode::from(run.exit as u8)
}
