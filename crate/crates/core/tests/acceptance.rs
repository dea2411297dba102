//! Runs every acceptance criterion and prints one line per criterion.
//! Exits with a failure status if any criterion does not hold.

use std::process::ExitCode;

use mhermite::checks::run_criterion;

fn main() -> ExitCode {
    let results: Vec<_> = (1..=13).map(run_criterion).collect();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
    if failed.is_empty() {
        println!("acceptance: all 13 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 13 pass, failing: {}", 13 - failed.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
