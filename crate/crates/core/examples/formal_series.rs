//! Exact q-expansions: theta coefficients, products, and a failure witness.

use qtheta::qformal::{
    AngleSymbols, HalfPiShift, Mutation, PochhammerKind, QSeries, Side, TauScale, format_monomial, pochhammer_qseries,
    prop_t3_identity, theta_qseries, verify,
};

fn render(s: &QSeries) -> Vec<String> {
    s.coeffs()
        .map(|(e, poly)| {
            let terms: Vec<String> = poly
                .terms()
                .map(|(m, c)| match format_monomial(s.symbols(), m).as_str() {
                    "1" => c.to_string(),
                    mono => format!("({c}) {mono}"),
                })
                .collect();
            format!("Q^{e}: {}", terms.join(" + "))
        })
        .collect()
}
use qtheta::theta::ThetaIndex;

fn main() -> qtheta::error::Result<()> {
    let z = AngleSymbols::new(["z"])?;
    let t1 = theta_qseries(ThetaIndex::ONE, &z, &[1], HalfPiShift::NONE, TauScale::One, 12)?;
    println!("theta1(z) in Q = q^(1/4), up to Q^12:");
    for line in render(&t1) {
        println!("  {line}");
    }

    let none = AngleSymbols::new(["s"])?;
    let euler = pochhammer_qseries(&PochhammerKind::q2_q2(), &none, 40)?;
    println!("(q^2; q^2) up to Q^40; the exponents are 8 times the pentagonal numbers:");
    for line in render(&euler) {
        println!("  {line}");
    }

    let good = verify(&prop_t3_identity(), 40, None)?;
    println!("{}: passed = {}, support {}", good.name, good.passed, good.support);
    let bad = verify(
        &prop_t3_identity(),
        40,
        Some(&Mutation::FlipSign {
            side: Side::Rhs,
            term: 1,
        }),
    )?;
    if let Some(w) = bad.witness {
        println!(
            "with one sign flipped: first difference at Q^{} on {}: {}",
            w.q_exp, w.monomial, w.value
        );
    }
    Ok(())
}
