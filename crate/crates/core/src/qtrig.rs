//! Gosper's q-sine and q-cosine, the quotients ccs_q and ssn_q, and Π_q.
//!
//! All functions take the angle `w` (so `sin_q(π/2) = 1`) and are evaluated
//! at the nome q^m selected by [`QTrigBase`]. `ProductForm` is Gosper's
//! Pochhammer-quotient definition; `ThetaForm` is the theta quotient at the
//! S-transformed parameter τ′ = −1/(mτ).

use std::fmt;

use rug::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;
use crate::params::{self, ModularParam, Precision, Transform, q_pow, q_pow_ratio};
use crate::theta::{SeriesControl, ThetaIndex, q_pochhammer, theta_null, theta_series};

/// The functions are taken at nome q^m, with q the nome of `param`.
#[derive(Debug, Clone, PartialEq)]
pub struct QTrigBase {
    base_exp: u32,
    param: ModularParam,
}

impl QTrigBase {
    pub fn new(param: ModularParam, base_exp: u32) -> Result<Self> {
        if base_exp == 0 {
            return Err(Error::Domain("base exponent must be at least 1".into()));
        }
        Ok(QTrigBase { base_exp, param })
    }

    pub fn base_exp(&self) -> u32 {
        self.base_exp
    }

    pub fn param(&self) -> &ModularParam {
        &self.param
    }

    /// Same underlying q, different exponent m.
    pub fn with_base_exp(&self, base_exp: u32) -> Result<Self> {
        QTrigBase::new(self.param.clone(), base_exp)
    }

    /// Parameter whose nome is q^m.
    pub fn effective_param(&self) -> ModularParam {
        self.param.scaled(self.base_exp)
    }

    /// τ′ = −1/(mτ).
    pub fn dual_param(&self) -> ModularParam {
        params::transform(&self.effective_param(), Transform::S)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvalForm {
    ProductForm,
    ThetaForm,
}

impl fmt::Display for EvalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalForm::ProductForm => f.write_str("product"),
            EvalForm::ThetaForm => f.write_str("theta"),
        }
    }
}

/// The four q-trigonometric functions, for callers that dispatch by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QFunc {
    Sin,
    Cos,
    Ccs,
    Ssn,
}

impl QFunc {
    pub const ALL: [QFunc; 4] = [QFunc::Sin, QFunc::Cos, QFunc::Ccs, QFunc::Ssn];

    pub fn eval(self, w: &Complex, b: &QTrigBase, form: EvalForm, prec: &Precision) -> Result<Complex> {
        match self {
            QFunc::Sin => sin_q(w, b, form, prec),
            QFunc::Cos => cos_q(w, b, form, prec),
            QFunc::Ccs => ccs_q(w, b, form, prec),
            QFunc::Ssn => ssn_q(w, b, form, prec),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QFunc::Sin => "sin_q",
            QFunc::Cos => "cos_q",
            QFunc::Ccs => "ccs_q",
            QFunc::Ssn => "ssn_q",
        }
    }
}

/// (q^{a}; q^{2})_∞ (q^{b}; q^{2})_∞ / (q; q²)²_∞ · q^{e}, all powers of the effective nome.
fn gosper_quotient(t: &ModularParam, a: &Complex, b: &Complex, e: &Complex, prec: &Precision) -> Result<Complex> {
    let bits = prec.work_bits();
    let ctl = SeriesControl::default();
    let nome2 = q_pow(t, &Complex::with_val(bits, 2), prec);
    let q1 = q_pow(t, &numeric::one(bits), prec);
    let num =
        q_pochhammer(&q_pow(t, a, prec), &nome2, prec, &ctl)? * q_pochhammer(&q_pow(t, b, prec), &nome2, prec, &ctl)?;
    let den = q_pochhammer(&q1, &nome2, prec, &ctl)?;
    let den = Complex::with_val(bits, den.square_ref());
    Ok(num / den * q_pow(t, e, prec))
}

fn angle_over_pi(w: &Complex, bits: u32) -> Complex {
    Complex::with_val(bits, w / numeric::pi(bits))
}

fn theta_quotient(j: ThetaIndex, null: ThetaIndex, w: &Complex, b: &QTrigBase, prec: &Precision) -> Result<Complex> {
    let dual = b.dual_param();
    Ok(theta_series(j, w, &dual, prec)? / theta_null(null, &dual, prec)?)
}

pub fn sin_q(w: &Complex, b: &QTrigBase, form: EvalForm, prec: &Precision) -> Result<Complex> {
    match form {
        EvalForm::ProductForm => {
            let bits = prec.work_bits();
            let z = angle_over_pi(w, bits);
            let a = Complex::with_val(bits, 2 - Complex::with_val(bits, &z * 2u32));
            let bb = Complex::with_val(bits, &z * 2u32);
            let shifted = Complex::with_val(bits, &z - 0.5f64);
            let e = Complex::with_val(bits, shifted.square_ref());
            gosper_quotient(&b.effective_param(), &a, &bb, &e, prec)
        }
        EvalForm::ThetaForm => theta_quotient(ThetaIndex::ONE, ThetaIndex::TWO, w, b, prec),
    }
}

pub fn cos_q(w: &Complex, b: &QTrigBase, form: EvalForm, prec: &Precision) -> Result<Complex> {
    match form {
        EvalForm::ProductForm => {
            let bits = prec.work_bits();
            let z = angle_over_pi(w, bits);
            let two_z = Complex::with_val(bits, &z * 2u32);
            let a = Complex::with_val(bits, 1 - &two_z);
            let bb = Complex::with_val(bits, 1 + &two_z);
            let e = Complex::with_val(bits, z.square_ref());
            gosper_quotient(&b.effective_param(), &a, &bb, &e, prec)
        }
        EvalForm::ThetaForm => theta_quotient(ThetaIndex::TWO, ThetaIndex::TWO, w, b, prec),
    }
}

fn pole_guarded_quotient(num: Complex, den: Complex, what: &str, prec: &Precision) -> Result<Complex> {
    let threshold = prec.eps().sqrt();
    if numeric::abs(&den) < threshold {
        return Err(Error::Pole(format!(
            "{what}: denominator below sqrt(eps); use the theta form at this point"
        )));
    }
    Ok(num / den)
}

/// cos_{q²}(w) / cos_q(w), i.e. θ₃(w|τ′)/ϑ₃(τ′).
pub fn ccs_q(w: &Complex, b: &QTrigBase, form: EvalForm, prec: &Precision) -> Result<Complex> {
    match form {
        EvalForm::ProductForm => {
            let doubled = b.with_base_exp(b.base_exp * 2)?;
            let num = cos_q(w, &doubled, form, prec)?;
            let den = cos_q(w, b, form, prec)?;
            pole_guarded_quotient(num, den, "ccs_q product form", prec)
        }
        EvalForm::ThetaForm => theta_quotient(ThetaIndex::THREE, ThetaIndex::THREE, w, b, prec),
    }
}

/// sin_{q²}(w) / sin_q(w), i.e. θ₄(w|τ′)/ϑ₃(τ′).
pub fn ssn_q(w: &Complex, b: &QTrigBase, form: EvalForm, prec: &Precision) -> Result<Complex> {
    match form {
        EvalForm::ProductForm => {
            let doubled = b.with_base_exp(b.base_exp * 2)?;
            let num = sin_q(w, &doubled, form, prec)?;
            let den = sin_q(w, b, form, prec)?;
            pole_guarded_quotient(num, den, "ssn_q product form", prec)
        }
        EvalForm::ThetaForm => theta_quotient(ThetaIndex::FOUR, ThetaIndex::THREE, w, b, prec),
    }
}

/// Π = q^{1/4} (q²;q²)²_∞ / (q;q²)²_∞ at the nome q^m.
pub fn pi_q(b: &QTrigBase, prec: &Precision) -> Result<Complex> {
    let bits = prec.work_bits();
    let ctl = SeriesControl::default();
    let t = b.effective_param();
    let q1 = q_pow(&t, &numeric::one(bits), prec);
    let q2 = Complex::with_val(bits, q1.square_ref());
    let ratio = q_pochhammer(&q2, &q2, prec, &ctl)? / q_pochhammer(&q1, &q2, prec, &ctl)?;
    Ok(Complex::with_val(bits, ratio.square_ref()) * q_pow_ratio(&t, 1, 4, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{from_real_nome, make_param};

    fn prec() -> Precision {
        Precision::new(128).unwrap()
    }

    fn c(text: &str) -> Complex {
        numeric::complex(400, text).unwrap()
    }

    fn real_base(q: &str, m: u32) -> QTrigBase {
        let p = from_real_nome(&numeric::real(400, q).unwrap(), &prec()).unwrap();
        QTrigBase::new(p, m).unwrap()
    }

    fn tau_base(tau: &str, m: u32) -> QTrigBase {
        QTrigBase::new(make_param(&c(tau), &prec()).unwrap(), m).unwrap()
    }

    fn half_pi() -> Complex {
        Complex::with_val(400, numeric::pi(400) / 2u32)
    }

    fn assert_close(a: &Complex, b: &Complex) {
        let r = numeric::relative_residual(a, b).to_f64();
        assert!(r <= prec().eps(), "residual {r:e}: {a} vs {b}");
    }

    const FORMS: [EvalForm; 2] = [EvalForm::ProductForm, EvalForm::ThetaForm];

    #[test]
    fn sin_q_special_values() {
        let b = real_base("0.2", 1);
        for form in FORMS {
            let zero = sin_q(&c("0"), &b, form, &prec()).unwrap();
            assert!(numeric::abs(&zero).to_f64() < 1e-40);
            assert_close(&sin_q(&half_pi(), &b, form, &prec()).unwrap(), &c("1"));
        }
        // Reference: 200-bit product evaluation in an independent tool.
        let expected = c("0.6442105790302587576754002092098748263387");
        for form in FORMS {
            assert_close(&sin_q(&c("0.7"), &b, form, &prec()).unwrap(), &expected);
        }
    }

    #[test]
    fn cos_q_special_values() {
        let b = real_base("0.2", 1);
        for form in FORMS {
            assert_close(&cos_q(&c("0"), &b, form, &prec()).unwrap(), &c("1"));
            let v = cos_q(&half_pi(), &b, form, &prec()).unwrap();
            assert!(numeric::abs(&v).to_f64() < 1e-35);
        }
        let b = real_base("0.15", 2);
        let expected = c("0.9584185591154368386979099207726132208838-0.0307449248945340231469759330148487662929i");
        for form in FORMS {
            assert_close(&cos_q(&c("0.3+0.1i"), &b, form, &prec()).unwrap(), &expected);
        }
    }

    #[test]
    fn ccs_q_values_and_pole() {
        let b = real_base("0.25", 1);
        for form in FORMS {
            assert_close(&ccs_q(&c("0"), &b, form, &prec()).unwrap(), &c("1"));
            assert_close(
                &ccs_q(&c("0.6"), &b, form, &prec()).unwrap(),
                &c("0.9989696559973566367272466146901051546542"),
            );
        }
        let theta = ccs_q(&half_pi(), &b, EvalForm::ThetaForm, &prec()).unwrap();
        assert!(theta.real().is_finite());
        let err = ccs_q(&half_pi(), &b, EvalForm::ProductForm, &prec()).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }

    #[test]
    fn ssn_q_values_and_pole() {
        let b = real_base("0.2", 1);
        let err = ssn_q(&c("0"), &b, EvalForm::ProductForm, &prec()).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
        let dual = b.dual_param();
        let expected = theta_null(ThetaIndex::FOUR, &dual, &prec()).unwrap()
            / theta_null(ThetaIndex::THREE, &dual, &prec()).unwrap();
        assert_close(&ssn_q(&c("0"), &b, EvalForm::ThetaForm, &prec()).unwrap(), &expected);
        assert_close(&ssn_q(&half_pi(), &b, EvalForm::ThetaForm, &prec()).unwrap(), &c("1"));
        for form in FORMS {
            assert_close(
                &ssn_q(&c("0.9"), &b, form, &prec()).unwrap(),
                &c("0.9966582281971186627955721424875689665856"),
            );
        }
    }

    #[test]
    fn pi_q_values() {
        let pr = prec();
        assert_close(
            &pi_q(&real_base("0.1", 1), &pr).unwrap(),
            &c("0.6816719551370556666364698840699377020796"),
        );
        let two = pi_q(&real_base("0.1", 2), &pr).unwrap();
        assert_close(&two, &pi_q(&real_base("0.01", 1), &pr).unwrap());
        assert_close(&two, &c("0.3225845828948187381620467002625236939846"));
        // Small nome: Π_q / q^{1/4} → 1.
        let b = real_base("1e-16", 1);
        let ratio = pi_q(&b, &pr).unwrap() / q_pow_ratio(&b.effective_param(), 1, 4, &pr);
        assert!((ratio.real().to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_nome_value() {
        let b = tau_base("1.2i", 1);
        let expected = c("0.8404241575852903805255750826824253921987+0.05542967456195444789779534798900523487358i");
        for form in FORMS {
            assert_close(&sin_q(&c("1+0.1i"), &b, form, &prec()).unwrap(), &expected);
        }
    }

    #[test]
    fn base_exponent_must_be_positive() {
        let p = make_param(&c("i"), &prec()).unwrap();
        assert!(QTrigBase::new(p, 0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cx(re: f64, im: f64) -> Complex {
            Complex::with_val(64, (re, im))
        }

        fn base_and_angle() -> impl Strategy<Value = (QTrigBase, Complex)> {
            (-0.5f64..0.5, 0.8f64..1.6, -2.0f64..2.0, -0.2f64..0.2).prop_map(|(tr, ti, wr, wi)| {
                let p = make_param(&cx(tr, ti), &prec()).unwrap();
                (QTrigBase::new(p, 1).unwrap(), cx(wr, wi))
            })
        }

        fn within(a: &Complex, b: &Complex) -> bool {
            numeric::relative_residual(a, b).to_f64() <= prec().eps()
        }

        fn plus(w: &Complex, x: &Complex) -> Complex {
            Complex::with_val(400, w + x)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn forms_agree_away_from_poles((b, w) in base_and_angle()) {
                for f in QFunc::ALL {
                    let t = f.eval(&w, &b, EvalForm::ThetaForm, &prec()).unwrap();
                    match f.eval(&w, &b, EvalForm::ProductForm, &prec()) {
                        Ok(p) => prop_assert!(within(&p, &t), "{} at {w}", f.name()),
                        Err(Error::Pole(_)) => {}
                        Err(e) => return Err(TestCaseError::fail(e.to_string())),
                    }
                }
            }

            #[test]
            fn quarter_turn_shifts((b, w) in base_and_angle()) {
                let pr = prec();
                let th = EvalForm::ThetaForm;
                let cos = cos_q(&w, &b, th, &pr).unwrap();
                let neg = Complex::with_val(400, -&w);
                prop_assert!(within(&cos, &sin_q(&plus(&w, &half_pi()), &b, th, &pr).unwrap()));
                prop_assert!(within(&cos, &sin_q(&plus(&neg, &half_pi()), &b, th, &pr).unwrap()));
                let ccs = ccs_q(&w, &b, th, &pr).unwrap();
                let ssn = ssn_q(&w, &b, th, &pr).unwrap();
                prop_assert!(within(&ccs_q(&plus(&w, &half_pi()), &b, th, &pr).unwrap(), &ssn));
                prop_assert!(within(&ssn_q(&plus(&w, &half_pi()), &b, th, &pr).unwrap(), &ccs));
            }

            #[test]
            fn doubling_relations((b, w) in base_and_angle()) {
                let pr = prec();
                let th = EvalForm::ThetaForm;
                let b2 = b.with_base_exp(2).unwrap();
                let two_w = Complex::with_val(400, &w * 2u32);
                let (s2, c2) = (sin_q(&w, &b2, th, &pr).unwrap(), cos_q(&w, &b2, th, &pr).unwrap());
                let ratio = pi_q(&b, &pr).unwrap() / pi_q(&b2, &pr).unwrap();
                let rhs = Complex::with_val(400, &ratio * &s2) * &c2;
                prop_assert!(within(&sin_q(&two_w, &b, th, &pr).unwrap(), &rhs));
                let rhs = Complex::with_val(400, c2.square_ref()) - Complex::with_val(400, s2.square_ref());
                prop_assert!(within(&cos_q(&two_w, &b, th, &pr).unwrap(), &rhs));
            }
        }
    }
}
