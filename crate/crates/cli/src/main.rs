use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use strichartz_cli::report::write_atomic;
use strichartz_cli::{execute, Cli, RunConfig, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use strichartz_core::Verdict;

fn usage(msg: &str) -> ExitCode {
    eprintln!("strichartz: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let cfg = match RunConfig::resolve(cli) {
        Ok(cfg) => cfg,
        Err(msg) => return usage(&msg),
    };
    let report = match execute(&cfg) {
        Ok(r) => r,
        Err(msg) => return usage(&msg),
    };
    let bytes = report.to_json();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &bytes) {
                return usage(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            let _ = std::io::stdout().write_all(&bytes);
        }
    }
    eprintln!("{}: {:?} ({:.2}s)", report.command, report.verdict, report.wall_time_seconds);
    ExitCode::from(if report.verdict == Verdict::Pass { EXIT_PASS } else { EXIT_FAIL } as u8)
}
