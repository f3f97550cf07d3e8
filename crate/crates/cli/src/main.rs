use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;
use tripnet_cli::{output_path, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("tripnet: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("tripnet: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match output_path(&cli.command) {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    match written {
        // A closed downstream pipe (e.g. `| head`) is not an error.
        Err(e) if e.kind() == ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("tripnet: I/O error: {e}");
            return ExitCode::from(1);
        }
        Ok(()) => {}
    }
    if let Some(f) = &outcome.failure {
        eprintln!("tripnet: verification failed: {f}");
    }
    if outcome.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
