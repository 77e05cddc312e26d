//! Runs the thirteen acceptance checks at full size and prints one
//! PASS/FAIL line per check; exits nonzero if any check fails.

use std::process::ExitCode;

use strichartz_cli::checks::{ids, run_check, SuiteSettings};

fn main() -> ExitCode {
    let settings = SuiteSettings::full();
    let total = ids().count();
    println!("acceptance: {total} checks, {} samples, seed {}", settings.samples, settings.seed);
    let mut failed = Vec::new();
    for id in ids() {
        let r = run_check(id, &settings);
        println!("{}", r.line());
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} checks passed", total);
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {} checks failed: {failed:?}", failed.len(), total);
        ExitCode::FAILURE
    }
}
