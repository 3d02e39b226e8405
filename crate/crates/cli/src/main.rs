use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use deltaritz_cli::{run, Cli, CliError, RunConfig};

fn main() -> ExitCode {
    // clap prints usage errors itself and exits with status 2
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::from_cli(cli)?;
    let output = run(&config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    match &config.out {
        Some(path) => std::fs::write(path, &output.report)?,
        None => std::io::stdout().lock().write_all(output.report.as_bytes())?,
    }
    Ok(())
}
