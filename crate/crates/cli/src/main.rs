use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cha_cli::output::emit;
use cha_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(
        &outcome.record,
        cli.common.format,
        cli.common.out.as_deref(),
    ) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match outcome.mismatch {
        Some(e) => fail(&e),
        None => ExitCode::SUCCESS,
    }
}

fn fail(e: &CliError) -> ExitCode {
    if let CliError::Mismatch(cells) = e {
        for cell in cells {
            eprintln!("mismatch: {cell}");
        }
    }
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
