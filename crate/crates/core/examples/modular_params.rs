//! Nome, transforms and fractional powers of q.

use qtheta::numeric;
use qtheta::params::{Precision, Transform, from_real_nome, make_param, q_pow_ratio, transform};

fn main() -> qtheta::error::Result<()> {
    let prec = Precision::new(128)?;
    let p = make_param(&numeric::complex(128, "0.3+1.1i")?, &prec)?;
    println!("tau      = {}", numeric::format_complex_short(p.tau(), 20));
    println!("q        = {}", numeric::format_complex_short(p.q(), 20));
    println!(
        "q^(1/4)  = {}",
        numeric::format_complex_short(&q_pow_ratio(&p, 1, 4, &prec), 20)
    );

    for kind in [Transform::S, Transform::Double, Transform::Half] {
        let t = transform(&p, kind);
        println!(
            "{kind:?}: tau = {}, q = {}",
            numeric::format_complex_short(t.tau(), 12),
            numeric::format_complex_short(t.q(), 12)
        );
    }

    let r = from_real_nome(&numeric::real(128, "0.5")?, &prec)?;
    println!("q = 0.5 gives tau = {}", numeric::format_complex_short(r.tau(), 20));
    Ok(())
}
