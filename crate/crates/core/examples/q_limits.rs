//! How fast sin_q and cos_q approach sin and cos as q -> 1.

use qtheta::dsl::{self, EvalOptions};
use qtheta::harness::{identity_sweep, limit_sweep};
use qtheta::numeric;
use qtheta::params::Precision;
use qtheta::qtrig::{EvalForm, QFunc};

fn main() -> qtheta::error::Result<()> {
    let prec = Precision::new(256)?;
    let qs: Vec<String> = ["0.3", "0.5", "0.7", "0.8", "0.9"].map(String::from).to_vec();
    for f in [QFunc::Sin, QFunc::Cos] {
        let t = limit_sweep(f, &qs, "0.37", &prec, EvalForm::ProductForm)?;
        println!("{}", t.label);
        for r in &t.rows {
            println!("  q = {:<5} |diff| = {:.3e}", r.q, r.deviation.approx);
        }
    }

    // An identity stays exact at every q, not only in the limit.
    let gosper = dsl::builtin_corpus()
        .into_iter()
        .find(|d| d.name == "gosper_1_15")
        .expect("builtin");
    let point = ["0.3", "0.7", "0.2", "-0.4"]
        .map(|s| numeric::complex(prec.work_bits(), s))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let t = identity_sweep(&gosper, &qs, &point, &prec, &EvalOptions::default())?;
    println!("{}", t.label);
    for r in &t.rows {
        println!("  q = {:<5} residual = {:.1e}", r.q, r.deviation.approx);
    }
    Ok(())
}
