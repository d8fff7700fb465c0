//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use cylrsk_core::verify::{SuiteConfig, CHECKS};

const SEED: u64 = 20_240_601;

fn main() -> ExitCode {
    let cfg = SuiteConfig::full(SEED);
    let mut failed = Vec::new();
    for check in CHECKS {
        let start = Instant::now();
        let r = check(&cfg);
        println!(
            "criterion {:>2} {} | {} | metric {:.3e} threshold {:.1e} | {} cases | {:.2} s | {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.metric,
            r.threshold,
            r.cases,
            start.elapsed().as_secs_f64(),
            r.detail
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass (seed {SEED})", CHECKS.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
