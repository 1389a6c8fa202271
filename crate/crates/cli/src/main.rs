use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cubeorder_cli::plan::out_path;
use cubeorder_cli::{write_atomically, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::from_command(&cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cubeorder: {e}");
            return ExitCode::from(2);
        }
    };
    let csv = match config.execute() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("cubeorder: {e}");
            return ExitCode::FAILURE;
        }
    };
    let written = match out_path(&cli.command) {
        Some(path) => write_atomically(path, csv.as_bytes()),
        None => std::io::stdout().lock().write_all(csv.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cubeorder: cannot write output: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
