//! Runs every registered verification case and prints one line per check.

use std::time::Instant;

use pairwalk::theorem::{verify_case, CaseParams, CASES};

fn main() -> pairwalk::Result<()> {
    for case in CASES {
        let start = Instant::now();
        let report = verify_case(case.id, CaseParams::default())?;
        println!("{:<24} {:?} ({:.1?})", case.id, report.status, start.elapsed());
        for check in &report.checks {
            let mark = if check.passed { "ok  " } else { "FAIL" };
            println!("    {mark} {}: {}", check.name, check.detail);
        }
    }
    Ok(())
}
