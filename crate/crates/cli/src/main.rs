use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use galois_cli::{run, Cli, CliError};

fn write_output(out: &str, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: out.to_string(),
        source,
    };
    if out == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(io)
    } else {
        std::fs::write(out, text).map_err(io)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                // clap uses 2 for usage errors; 2 is reserved for domain errors here.
                _ => ExitCode::from(1),
            };
        }
    };
    let result = run(&cli).and_then(|output| {
        write_output(&cli.out, &output.text)?;
        match output.failure {
            Some(failed) => Err(CliError::InvariantFailed(failed)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
