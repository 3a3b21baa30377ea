use std::process::ExitCode;

use clap::Parser;

use qdist_cli::app::{run, Cli, OutputMode, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.output {
                OutputMode::Text => print!("{}", outcome.report.to_text()),
                OutputMode::Json => println!("{}", outcome.report.to_json()),
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::Invalid as u8)
        }
    }
}
