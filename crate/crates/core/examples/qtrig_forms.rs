//! Gosper's q-trigonometric functions in both evaluation forms.

use qtheta::error::Error;
use qtheta::numeric;
use qtheta::params::{Precision, from_real_nome};
use qtheta::qtrig::{EvalForm, QFunc, QTrigBase, pi_q};
use rug::Complex;

fn main() -> qtheta::error::Result<()> {
    let prec = Precision::new(128)?;
    let base = QTrigBase::new(from_real_nome(&numeric::real(128, "0.2")?, &prec)?, 1)?;
    let half_pi = Complex::with_val(128, numeric::pi(128) / 2u32);

    println!("q = 0.2");
    println!(
        "Pi_q         = {}",
        numeric::format_complex_short(&pi_q(&base, &prec)?, 30)
    );
    for f in QFunc::ALL {
        for (shown, w) in [("0.37", numeric::complex(128, "0.37")?), ("pi/2", half_pi.clone())] {
            let theta = f.eval(&w, &base, EvalForm::ThetaForm, &prec)?;
            let product = match f.eval(&w, &base, EvalForm::ProductForm, &prec) {
                Ok(v) => format!("{:.1e}", numeric::relative_residual(&v, &theta).to_f64()),
                Err(Error::Pole(_)) => "pole".into(),
                Err(e) => return Err(e),
            };
            println!(
                "{}({shown}) = {}   product form differs by {product}",
                f.name(),
                numeric::format_complex_short(&theta, 30)
            );
        }
    }

    // Base q^2: the subscript in sin_{q^2}.
    let b2 = base.with_base_exp(2)?;
    let w = numeric::complex(128, "0.37")?;
    println!(
        "sin_(q^2)(0.37) = {}",
        numeric::format_complex_short(&QFunc::Sin.eval(&w, &b2, EvalForm::ThetaForm, &prec)?, 30)
    );
    Ok(())
}
