//! Acceptance suite at full scale: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use thresholdlab::validation::{checks, run_check, Scale};

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, check) in checks().iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| check.name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let o = run_check(check, Scale::Full);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {:<13} {:>7.2}s  {}", i + 1, o.name, o.seconds, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
