//! The printed ssn-family identities against their corrected forms.

use qtheta::dsl;
use qtheta::harness::{self, RunConfig};

fn main() -> qtheta::error::Result<()> {
    let mut cfg = RunConfig::new(128)?;
    cfg.strategy.count = 8;
    cfg.strategy.tau_set = vec!["1.2i".into()];
    let builtin = dsl::builtin_corpus();
    let mut decls: Vec<_> = dsl::errata_corpus();
    for d in &decls.clone() {
        if let Some(fixed) = d.name.strip_suffix("_printed") {
            decls.extend(builtin.iter().find(|b| b.name == fixed).cloned());
        }
    }
    let report = harness::run_corpus(&decls, &cfg)?;
    for r in &report.numeric {
        let res = r.max_rel_residual.as_ref().map_or(f64::NAN, |n| n.approx);
        println!(
            "{:<22} {}  max residual {res:.2e}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let ratio = decls.iter().find(|d| d.name == "thm_7_5_ratio").expect("shipped");
    println!(
        "\nthe printed form is off by a constant factor:\n{}",
        dsl::pretty_file(std::slice::from_ref(ratio))
    );
    Ok(())
}
