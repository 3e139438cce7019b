use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pauli_pt::cli::{execute, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).map_err(CliError::from).and_then(|doc| {
        let mut out = std::io::stdout().lock();
        out.write_all(doc.as_bytes())?;
        out.flush()?;
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
