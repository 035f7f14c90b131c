use std::process::ExitCode;

use clap::Parser;
use ordkit::cli::{render, run, Cli, Limits};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Limits::from_env().and_then(|limits| run(&cli, limits));
    match outcome {
        Ok(outcome) => {
            let text = render(&outcome.doc, cli.format);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
