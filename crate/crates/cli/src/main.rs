mod args;
mod eval;
mod failure;
mod kernel;
mod map;
mod verify;

use anyhow::Context;
use args::{Cli, Command};
use clap::Parser;
use std::process::ExitCode;

const THREADS_ENV: &str = "HUBBLE_SPECTRUM_THREADS";

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| failure::usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    let config = args::load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Kernel(a) => kernel::run(a),
        Command::Map(a) => map::run(a),
        Command::Verify(a) => verify::run(a, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(failure::exit_code(&err))
        }
    }
}
