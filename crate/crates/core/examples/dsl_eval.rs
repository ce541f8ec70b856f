//! Parsing and evaluating identity files.

use qtheta::dsl::{self, Env, EvalOptions, eval_expr, eval_sides, parse, parse_expr};
use qtheta::numeric;
use qtheta::params::{Precision, make_param};
use qtheta::qtrig::EvalForm;

const SOURCE: &str = r#"
# A q-analogue of sin(2x) = 2 sin(x) cos(x), at nome q^2 on the right.
identity "double_angle" {
  vars: x;
  lhs: sinq(2*x);
  rhs: piq() / piq[2]() * sinq[2](x) * cosq[2](x);
  tags: example;
}
"#;

fn main() -> qtheta::error::Result<()> {
    let prec = Precision::new(128)?;
    let p = make_param(&numeric::complex(128, "1.2i")?, &prec)?;

    let e = parse_expr("theta3(x, 2*tau)^2 - thetanull4(-1/tau) / 3")?;
    println!("parsed:  {e}");
    let mut env = Env::new();
    env.insert("x".into(), numeric::complex(128, "0.4+0.1i")?);
    println!(
        "value:   {}",
        numeric::format_complex_short(&eval_expr(&e, &env, &p, &prec, &EvalOptions::default())?, 25)
    );

    let decls = parse(SOURCE)?;
    print!("{}", dsl::pretty_file(&decls));
    let x = [numeric::complex(128, "0.83-0.05i")?];
    for form in [EvalForm::ProductForm, EvalForm::ThetaForm] {
        let (l, r) = eval_sides(&decls[0], &x, &p, &prec, &EvalOptions::uniform(form))?;
        println!(
            "{form}: lhs = {}  residual {:.1e}",
            numeric::format_complex_short(&l, 20),
            numeric::relative_residual(&l, &r).to_f64()
        );
    }

    // Errors carry a line and column.
    if let Err(e) = parse("identity \"bad\" { vars: x; lhs: sinq(y); rhs: 0; }") {
        println!("error:   {e}");
    }
    Ok(())
}
