//! The four theta functions by series and by product, plus the pair checks.

use qtheta::numeric;
use qtheta::params::{Precision, make_param};
use qtheta::theta::{
    ThetaIndex, doubling_identities, pair_residual, shift_half_period, shift_half_pi, theta_null, theta_product,
    theta_series, theta1_quarter_pi, triple_product_check,
};

fn main() -> qtheta::error::Result<()> {
    let prec = Precision::new(128)?;
    let p = make_param(&numeric::complex(128, "0.3+1.1i")?, &prec)?;
    let z = numeric::complex(128, "0.5+0.1i")?;

    for j in ThetaIndex::ALL {
        let s = theta_series(j, &z, &p, &prec)?;
        let t = theta_product(j, &z, &p, &prec)?;
        println!(
            "theta{}(z) = {}   |series - product| rel {:.1e}",
            j.get(),
            numeric::format_complex_short(&s, 25),
            numeric::relative_residual(&s, &t).to_f64()
        );
    }
    for j in ThetaIndex::ALL {
        println!(
            "thetanull{} = {}",
            j.get(),
            numeric::format_complex_short(&theta_null(j, &p, &prec)?, 25)
        );
    }

    let (d1, d2) = doubling_identities(&z, &p, &prec)?;
    let q = p.q().clone();
    let w = numeric::complex(128, "0.7-0.2i")?;
    let checks = [
        (
            "theta1(z + pi/2) = theta2(z)",
            pair_residual(&shift_half_pi(&z, &p, &prec)?),
        ),
        ("half-period shift", pair_residual(&shift_half_period(&z, &p, &prec)?)),
        ("theta1(pi/4) product", pair_residual(&theta1_quarter_pi(&p, &prec)?)),
        ("doubling, argument", pair_residual(&d1)),
        ("doubling, nulls", pair_residual(&d2)),
        ("triple product", pair_residual(&triple_product_check(&w, &q, &prec)?)),
    ];
    for (name, r) in checks {
        println!("{name:<30} residual {r:.1e}  (eps {:.1e})", prec.eps());
    }
    Ok(())
}
