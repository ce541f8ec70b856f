//! Proves the theta-level identities coefficient by coefficient.

use std::time::Instant;

use qtheta::qformal;

fn main() -> qtheta::error::Result<()> {
    type Check = fn(i64) -> qtheta::error::Result<qformal::ExactReport>;
    let checks: [(&str, Check, i64); 7] = [
        ("riemann_L", qformal::verify_riemann_l, 40),
        ("t3", qformal::verify_prop_t3, 40),
        ("t2", qformal::verify_prop_t2, 40),
        ("t4", qformal::verify_prop_t4, 40),
        ("doubling", qformal::verify_doubling, 60),
        ("quarter_pi_squared", qformal::verify_quarter_pi_squared, 80),
        ("triple", qformal::verify_triple_product, 25),
    ];
    for (name, check, order) in checks {
        let t = Instant::now();
        let r = check(order)?;
        println!(
            "{name:<20} order {order:>3}  {}  support {:>6}  {:.2?}",
            if r.passed { "PASS" } else { "FAIL" },
            r.support,
            t.elapsed()
        );
    }
    Ok(())
}
