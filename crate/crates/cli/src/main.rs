use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;

use lhs_cli::report::render;
use lhs_cli::{run, Cli};

fn main() -> ExitCode {
    match try_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn try_main() -> Result<bool> {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = run(&cli)?;
    print!("{}", render(&report));
    println!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    if let Some(path) = &cli.json {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.all_pass())
}
