//! `circle-escape`: exact constants, Mellin data, zeros, simulations and probes
//! as CSV or JSON tables.

mod args;
mod commands;
mod output;
mod reference;

use std::process::ExitCode;

use args::{Args, CliError};

fn main() -> ExitCode {
    let args = match args::parse(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(CliError::Help(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e),
    };
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    }
    let table = commands::run(args)?;
    output::emit(&table, args.format, args.output.as_deref())
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("circle-escape: {e}");
    ExitCode::from(e.exit_code())
}
