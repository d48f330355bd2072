mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use fracsum::Level;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(commands::EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_USAGE);
        }
    }

    let start = Instant::now();
    let mut outcome = commands::run(&cli.global, &cli.command);
    outcome.record.timing_ms = start.elapsed().as_secs_f64() * 1e3;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let written = match cli.global.format {
        Format::Json => writeln!(out, "{}", outcome.record.to_json()),
        Format::Table => {
            for d in &outcome.record.diagnostics {
                let level = match d.level {
                    Level::Info => "info",
                    Level::Warning => "warning",
                    Level::Error => "error",
                };
                eprintln!("{level}: {}", d.message);
            }
            write!(out, "{}", outcome.table)
        }
    };
    if written.and_then(|_| out.flush()).is_err() {
        return ExitCode::from(commands::EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
