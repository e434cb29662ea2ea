use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use focs::cli::{execute, Cli, EXIT_INPUT};
use focs::json::ErrorJson;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            eprint!("{e}");
            let document = ErrorJson { error: "Usage", message: e.kind().to_string(), witness: None };
            println!("{}", serde_json::to_string_pretty(&document).expect("documents serialize"));
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = execute(&cli);
    if let Some(error) = outcome.document.get("error") {
        let message = outcome.document.get("message").and_then(|m| m.as_str()).unwrap_or_default();
        eprintln!("focs: {}: {message}", error.as_str().unwrap_or("error"));
    }
    let mut text = serde_json::to_string_pretty(&outcome.document).expect("documents serialize");
    text.push('\n');
    let mut exit = outcome.exit;
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("focs: cannot write {}: {e}", path.display());
                exit = EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(exit as u8)
}
