//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run a subset with `cargo test --test acceptance -- 4 7`.

use std::process::ExitCode;

use rectchar::verify::{run_check, Level, CRITERIA};

fn main() -> ExitCode {
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: Vec<usize> = if selected.is_empty() { (1..=CRITERIA).collect() } else { selected };

    let mut failed = 0;
    for c in &criteria {
        let out = run_check(*c, Level::Quick);
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {status} {} [{}] {:.2}s: {}",
            out.criterion, out.name, out.params, out.elapsed_secs, out.detail
        );
        if let Some(cx) = &out.counterexample {
            println!("    counterexample: {cx}");
            failed += 1;
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
