//! Acceptance criteria 1 to 8, one line each. Runs without the libtest
//! harness so the table always prints.

use std::process::ExitCode;

use jsharp_core::verify;

fn main() -> ExitCode {
    let results = verify::run_all(0);
    for r in &results {
        println!(
            "{} criterion {} ({}): {} [{} ms, limit {} ms]",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail,
            r.elapsed_ms,
            r.limit_ms
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
