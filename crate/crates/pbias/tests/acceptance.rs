//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::Instant;

use pbias::suite::{self, CriterionOutcome};

fn main() -> ExitCode {
    let seed = std::env::var("PBIAS_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(suite::DEFAULT_SEED);
    let criteria: [Box<dyn Fn() -> CriterionOutcome>; 10] = [
        Box::new(move || suite::coefficient_prediction(seed)),
        Box::new(suite::character_sums),
        Box::new(move || suite::level_transfer(seed)),
        Box::new(suite::influence_transfer),
        Box::new(move || suite::hypercontractivity(seed)),
        Box::new(suite::boundary_transfer),
        Box::new(suite::tightness),
        Box::new(suite::parseval_and_correlation),
        Box::new(move || suite::structural(seed)),
        Box::new(suite::dedekind),
    ];
    let mut failed = 0;
    for run in &criteria {
        let start = Instant::now();
        let outcome = run();
        println!("{outcome} [{:.2}s]", start.elapsed().as_secs_f64());
        if !outcome.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed (seed {seed})", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
