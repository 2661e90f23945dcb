//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! The deep tier (n = 6, the 3 × 3 box) runs unless `NFACT_DEEP=0`.

use std::process::ExitCode;
use std::time::Instant;

use nfact::suites::{criteria, judge, Runner};
use nfact::tasks::Settings;

fn main() -> ExitCode {
    let deep = !matches!(std::env::var("NFACT_DEEP").as_deref(), Ok("0" | "false" | "no" | "off"));
    let crits = criteria(deep);
    let jobs: Vec<_> = crits.iter().flat_map(|c| c.jobs.iter().cloned()).collect();
    let mut runner = Runner::new(Settings {
        deep,
        ..Settings::default()
    });
    runner.timing = true;
    let start = Instant::now();
    let results = match runner.run_paired(jobs) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: could not run the suite: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!(
        "acceptance: {} jobs in {:.1} s (deep tier {})",
        results.len(),
        start.elapsed().as_secs_f64(),
        if deep { "on" } else { "off" }
    );
    let mut all = true;
    for c in &crits {
        let v = judge(c, &results);
        all &= v.pass;
        println!(
            "criterion {:>2}: {} {} ({})",
            v.id,
            if v.pass { "PASS" } else { "FAIL" },
            v.title,
            v.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
