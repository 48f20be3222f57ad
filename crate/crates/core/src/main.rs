use std::process::ExitCode;

use clap::Parser;
use shiftspec::cli::{run, Cli, RunConfig, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, table_out) = RunConfig::from_cli(&cli);
    let outcome = run(&cfg);
    print!("{}", outcome.report);
    if let (Some(path), Some(table)) = (table_out, &outcome.table) {
        if let Err(e) = std::fs::write(&path, table) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(outcome.code as u8)
}
