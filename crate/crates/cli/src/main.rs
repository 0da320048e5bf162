mod cli;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use fcc_core::FccError;
use serde_json::{json, Value};

use crate::cli::Cli;
use crate::commands::Status;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;

fn error_object(err: &anyhow::Error) -> (u8, Value) {
    let (code, kind, suggestion) = match err.downcast_ref::<FccError>() {
        Some(FccError::ConstructionInfeasible { suggestion, .. }) => (
            EXIT_INFEASIBLE,
            "construction_infeasible",
            suggestion.clone(),
        ),
        Some(FccError::InternalConsistency(_)) => (EXIT_CHECK_FAILED, "internal_consistency", None),
        Some(FccError::Feasibility(_)) => (EXIT_VALIDATION, "too_large", None),
        Some(FccError::Parse(_)) => (EXIT_VALIDATION, "parse", None),
        Some(FccError::Domain(_)) => (EXIT_VALIDATION, "domain", None),
        Some(_) => (EXIT_VALIDATION, "invalid_argument", None),
        None => (EXIT_VALIDATION, "io", None),
    };
    let message = format!("{err:#}");
    let mut body = json!({ "kind": kind, "message": message });
    if let Some(s) = suggestion {
        body["suggestion"] = json!(s);
    }
    (code, body)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = json!({
        "command": cli.command,
        "format": cli.format,
        "threads": cli.threads,
    });

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }

    match commands::run(&cli.command) {
        Ok(outcome) => {
            match output::render(cli.format, &config, &outcome.result) {
                Ok(text) => print!("{text}"),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(EXIT_CHECK_FAILED);
                }
            }
            match outcome.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::CheckFailed => ExitCode::from(EXIT_CHECK_FAILED),
                Status::Unknown => ExitCode::from(EXIT_UNKNOWN),
            }
        }
        Err(err) => {
            let (code, body) = error_object(&err);
            eprintln!("error: {err:#}");
            println!("{}", json!({ "config": config, "error": body }));
            ExitCode::from(code)
        }
    }
}
