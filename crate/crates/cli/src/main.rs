use std::process::ExitCode;

use clap::Parser;
use theta_dp_cli::commands::EXIT_USAGE;
use theta_dp_cli::{run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line = std::env::args().collect::<Vec<_>>().join(" ");
    let outcome = match run(&cli, &command_line) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let rendered = match cli.format {
        Format::Json => outcome.report.to_json(),
        Format::Csv => outcome.report.to_csv(),
    };
    match rendered {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
