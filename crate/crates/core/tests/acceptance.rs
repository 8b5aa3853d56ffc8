//! Runs every acceptance check and prints one line per check.
//!
//! Built without the test harness so the lines always reach the output.

use std::process::ExitCode;

use euler_profile::verify;

fn main() -> ExitCode {
    let checks = verify::run_all();
    for c in &checks {
        println!("{}", c.line());
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    println!("{} of {} checks passed", checks.len() - failed.len(), checks.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {failed:?}");
        ExitCode::FAILURE
    }
}
