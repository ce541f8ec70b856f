//! Runs the built-in corpus and the exact checks, then prints the report.

use std::collections::BTreeMap;

use qtheta::dsl;
use qtheta::harness::{self, ReportFormat, RunConfig, emit_report};

fn main() -> qtheta::error::Result<()> {
    let mut cfg = RunConfig::new(128)?;
    cfg.tol = 1e-25;
    cfg.strategy.count = 10;
    let mut report = harness::run_corpus(&dsl::builtin_corpus(), &cfg)?;
    report.exact = harness::run_exact(&BTreeMap::new())?;
    emit_report(&report, ReportFormat::Text, &mut std::io::stdout())?;
    println!(
        "{} of {} rows failed",
        report.failures(),
        report.numeric.len() + report.exact.len()
    );
    Ok(())
}
