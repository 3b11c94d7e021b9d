use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use k2tlab_cli::args::Cli;
use k2tlab_cli::execute;

const THREADS_VAR: &str = "K2TLAB_THREADS";

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<i32> {
    configure_threads()?;
    let exec = execute(cli)?;
    let json = serde_json::to_string_pretty(&exec.report)?;
    let mut stdout = std::io::stdout().lock();
    match &cli.json {
        Some(path) if path.as_os_str() == "-" => writeln!(stdout, "{json}")?,
        Some(path) => {
            fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
            stdout.write_all(exec.text.as_bytes())?;
        }
        None => stdout.write_all(exec.text.as_bytes())?,
    }
    stdout.flush()?;
    Ok(exec.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
