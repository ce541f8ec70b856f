use std::collections::HashMap;

use rug::{Complex, ops::Pow};

use super::ast::{Call, Expr, Func, IdentityDecl, TauSel};
use crate::error::{Error, Result};
use crate::numeric;
use crate::params::{ModularParam, Precision, Transform, q_pow, transform};
use crate::qtrig::{EvalForm, QFunc, QTrigBase, pi_q};
use crate::theta::{SeriesControl, q_pochhammer, theta_null, theta_series};

/// Which definition backs the Gosper functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// sinq, cosq
    pub sin_cos: EvalForm,
    /// ccsq, ssnq
    pub ccs_ssn: EvalForm,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            sin_cos: EvalForm::ProductForm,
            ccs_ssn: EvalForm::ThetaForm,
        }
    }
}

impl EvalOptions {
    pub fn uniform(form: EvalForm) -> Self {
        EvalOptions {
            sin_cos: form,
            ccs_ssn: form,
        }
    }
}

pub type Env = HashMap<String, Complex>;

/// Evaluation context shared by every node of one expression.
struct Ctx<'a> {
    env: &'a Env,
    p: &'a ModularParam,
    prec: &'a Precision,
    opts: &'a EvalOptions,
}

pub fn eval_expr(e: &Expr, env: &Env, p: &ModularParam, prec: &Precision, opts: &EvalOptions) -> Result<Complex> {
    Ctx { env, p, prec, opts }.eval(e)
}

impl Ctx<'_> {
    fn bits(&self) -> u32 {
        self.prec.work_bits()
    }

    fn guard_den(&self, den: &Complex, what: &str) -> Result<()> {
        if numeric::abs(den) < self.prec.eps().sqrt() {
            return Err(Error::Pole(format!("{what}: denominator below sqrt(eps)")));
        }
        Ok(())
    }

    fn eval(&self, e: &Expr) -> Result<Complex> {
        let bits = self.bits();
        Ok(match e {
            Expr::Add(a, b) => self.eval(a)? + self.eval(b)?,
            Expr::Sub(a, b) => self.eval(a)? - self.eval(b)?,
            Expr::Mul(a, b) => self.eval(a)? * self.eval(b)?,
            Expr::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                self.guard_den(&den, "division")?;
                num / den
            }
            Expr::Neg(a) => -self.eval(a)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    self.guard_den(&base, "negative power")?;
                }
                base.pow(*k)
            }
            Expr::Call(c) => self.call(c).map_err(|err| Error::At {
                span: c.pos.0,
                source: Box::new(err),
            })?,
            Expr::Var(name, _) => match self.env.get(name) {
                Some(v) => Complex::with_val(bits, v),
                None => return Err(Error::UnboundVariable(name.clone())),
            },
            Expr::Pi => Complex::with_val(bits, numeric::pi(bits)),
            Expr::Tau => Complex::with_val(bits, self.p.tau()),
            Expr::Rational(r) => Complex::with_val(bits, r),
        })
    }

    fn call(&self, c: &Call) -> Result<Complex> {
        let bits = self.bits();
        let arg = match &c.arg {
            Some(a) => Some(self.eval(a)?),
            None => None,
        };
        let arg = || arg.clone().expect("parser guarantees an argument");
        let base = || QTrigBase::new(self.p.clone(), c.base_exp);
        let qfunc = |f: QFunc, form: EvalForm| f.eval(&arg(), &base()?, form, self.prec);
        match c.func {
            Func::Sinq => qfunc(QFunc::Sin, self.opts.sin_cos),
            Func::Cosq => qfunc(QFunc::Cos, self.opts.sin_cos),
            Func::Ccsq => qfunc(QFunc::Ccs, self.opts.ccs_ssn),
            Func::Ssnq => qfunc(QFunc::Ssn, self.opts.ccs_ssn),
            Func::Sin => Ok(arg().sin()),
            Func::Cos => Ok(arg().cos()),
            Func::Expi => {
                let mut z = arg();
                z.mul_i_mut(false);
                Ok(z.exp())
            }
            Func::Theta(j) => theta_series(j, &arg(), &self.theta_param(c), self.prec),
            Func::ThetaNull(j) => theta_null(j, &self.theta_param(c), self.prec),
            Func::Piq => pi_q(&base()?, self.prec),
            Func::Qpow => Ok(q_pow(&self.p.scaled(c.base_exp), &arg(), self.prec)),
            Func::Qpoch => {
                let nome = q_pow(&self.p.scaled(c.base_exp), &numeric::one(bits), self.prec);
                q_pochhammer(&arg(), &nome, self.prec, &SeriesControl::default())
            }
        }
    }

    fn theta_param(&self, c: &Call) -> ModularParam {
        let t = self.p.scaled(c.base_exp);
        match c.tau {
            TauSel::Tau => t,
            TauSel::Double => transform(&t, Transform::Double),
            TauSel::Half => transform(&t, Transform::Half),
            TauSel::S => transform(&t, Transform::S),
        }
    }
}

/// Environment for one sample point: free vars in declaration order, then
/// the where-bindings in order.
pub fn bind(
    decl: &IdentityDecl,
    point: &[Complex],
    p: &ModularParam,
    prec: &Precision,
    opts: &EvalOptions,
) -> Result<Env> {
    if point.len() != decl.vars.len() {
        return Err(Error::Domain(format!(
            "`{}` has {} variables, got {} values",
            decl.name,
            decl.vars.len(),
            point.len()
        )));
    }
    let mut env: Env = decl.vars.iter().cloned().zip(point.iter().cloned()).collect();
    for (name, e) in &decl.bindings {
        let v = eval_expr(e, &env, p, prec, opts)?;
        env.insert(name.clone(), v);
    }
    Ok(env)
}

/// (lhs, rhs) at one sample point.
pub fn eval_sides(
    decl: &IdentityDecl,
    point: &[Complex],
    p: &ModularParam,
    prec: &Precision,
    opts: &EvalOptions,
) -> Result<(Complex, Complex)> {
    let env = bind(decl, point, p, prec, opts)?;
    Ok((
        eval_expr(&decl.lhs, &env, p, prec, opts)?,
        eval_expr(&decl.rhs, &env, p, prec, opts)?,
    ))
}
