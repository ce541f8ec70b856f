//! Formal expansions of theta functions and Pochhammer products on the
//! integer grid of Q = q^{1/4}.

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::laurent::{AngleSymbols, LaurentPoly};
use super::series::QSeries;
use crate::error::{Error, Result};
use crate::theta::ThetaIndex;

/// Argument offset t·π/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HalfPiShift {
    pub quarter_turns: i64,
}

impl HalfPiShift {
    pub const NONE: HalfPiShift = HalfPiShift { quarter_turns: 0 };

    pub fn new(quarter_turns: i64) -> Self {
        HalfPiShift { quarter_turns }
    }
}

/// Multiplier applied to τ, which multiplies every Q-exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum TauScale {
    #[default]
    One,
    Two,
    Half,
}

impl TauScale {
    fn apply(self, e: i64) -> Result<i64> {
        match self {
            TauScale::One => Ok(e),
            TauScale::Two => Ok(2 * e),
            TauScale::Half if e % 2 == 0 => Ok(e / 2),
            TauScale::Half => Err(Error::Grid(format!("Q-exponent {e} is odd; tau/2 leaves the Q grid"))),
        }
    }
}

/// Formal θ_j(Σ c_s·s + t·π/2 | scale·τ) truncated at Q^order.
pub fn theta_qseries(
    j: ThetaIndex,
    symbols: &AngleSymbols,
    arg_coeffs: &[i64],
    shift: HalfPiShift,
    tau_scale: TauScale,
    order: i64,
) -> Result<QSeries> {
    if arg_coeffs.len() != symbols.len() {
        return Err(Error::Domain(format!(
            "argument has {} coefficients for {} symbols",
            arg_coeffs.len(),
            symbols.len()
        )));
    }
    let t = shift.quarter_turns;
    let mut out = QSeries::zero(symbols.clone(), order);
    let scaled = |k: i64| arg_coeffs.iter().map(|c| c * k).collect::<Vec<i64>>();
    let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
    // The base exponent grows with |k| on both sides, so stop at the first k
    // (and its partner) whose exponent exceeds the order.
    for k in 0i64.. {
        let partners: [i64; 2];
        let base = if j.is_half_integral() {
            partners = [k, -k - 1];
            4 * k * (k + 1) + 1
        } else {
            partners = [k, -k];
            4 * k * k
        };
        let exp = tau_scale.apply(base)?;
        if exp > order {
            break;
        }
        let members: &[i64] = if k == 0 && !j.is_half_integral() {
            &partners[..1]
        } else {
            &partners
        };
        for &kk in members {
            let (freq, coeff) = match j.get() {
                1 => (
                    2 * kk + 1,
                    GaussianRational::from_int(sign(kk)).mul_i_pow(3 + (2 * kk + 1) * t),
                ),
                2 => (2 * kk + 1, GaussianRational::i_pow((2 * kk + 1) * t)),
                3 => (2 * kk, GaussianRational::i_pow(2 * kk * t)),
                _ => (2 * kk, GaussianRational::from_int(sign(kk)).mul_i_pow(2 * kk * t)),
            };
            out.add_term(exp, LaurentPoly::monomial(scaled(freq), coeff));
        }
    }
    Ok(out)
}

/// (±Q^{q_exp}·e^{i mono·s}; Q^{step})_∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochhammerKind {
    pub negate: bool,
    pub q_exp: i64,
    pub step: i64,
    /// Angle exponents of the base; empty means the constant monomial.
    pub mono: Vec<i64>,
}

impl PochhammerKind {
    /// (q²; q²)_∞
    pub fn q2_q2() -> Self {
        PochhammerKind {
            negate: false,
            q_exp: 8,
            step: 8,
            mono: vec![],
        }
    }

    /// (−q⁴; q⁴)_∞
    pub fn neg_q4_q4() -> Self {
        PochhammerKind {
            negate: true,
            q_exp: 16,
            step: 16,
            mono: vec![],
        }
    }

    /// (q; q²)_∞
    pub fn q_q2() -> Self {
        PochhammerKind {
            negate: false,
            q_exp: 4,
            step: 8,
            mono: vec![],
        }
    }
}

/// Exact product of the factors (1 ∓ Q^{q_exp + n·step}·mono) that can reach Q^order.
pub fn pochhammer_qseries(kind: &PochhammerKind, symbols: &AngleSymbols, order: i64) -> Result<QSeries> {
    if kind.step < 1 || kind.q_exp < 0 {
        return Err(Error::Domain(format!(
            "Pochhammer base exponent {} and step {} must be >= 0 and >= 1",
            kind.q_exp, kind.step
        )));
    }
    let mono = if kind.mono.is_empty() {
        vec![0; symbols.len()]
    } else {
        kind.mono.clone()
    };
    if mono.len() != symbols.len() {
        return Err(Error::Domain(
            "Pochhammer monomial does not match the symbol table".into(),
        ));
    }
    let coeff = GaussianRational::from_int(if kind.negate { 1 } else { -1 });
    let mut product = QSeries::one(symbols.clone(), order);
    let mut exp = kind.q_exp;
    let mut n = 1i64;
    while exp <= order {
        let mut factor = QSeries::one(symbols.clone(), order);
        let factor_mono: Vec<i64> = mono.clone();
        factor.add_term(exp, LaurentPoly::monomial(factor_mono, coeff.clone()));
        product = product.mul(&factor)?;
        exp = kind.q_exp + n * kind.step;
        n += 1;
    }
    Ok(product)
}

/// Σ_n (−1)ⁿ Q^{n(n−1)/2} zⁿ over the symbol in `slot`, truncated at Q^order.
pub fn triple_sum_qseries(symbols: &AngleSymbols, slot: usize, order: i64) -> Result<QSeries> {
    if slot >= symbols.len() {
        return Err(Error::Domain(format!("no symbol slot {slot}")));
    }
    let mut out = QSeries::zero(symbols.clone(), order);
    // n and 1 − n share the exponent n(n−1)/2.
    for n in 1i64.. {
        let exp = n * (n - 1) / 2;
        if exp > order {
            break;
        }
        for m in [n, 1 - n] {
            let mut e = vec![0; symbols.len()];
            e[slot] = m;
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(exp, LaurentPoly::monomial(e, GaussianRational::from_int(sign)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AngleSymbols {
        AngleSymbols::new(["z"]).unwrap()
    }

    fn constant_coeffs(s: &QSeries) -> Vec<(i64, i64)> {
        s.coeffs()
            .map(|(e, p)| {
                assert_eq!(p.len(), 1);
                let (m, c) = p.terms().next().unwrap();
                assert!(m.iter().all(|&x| x == 0));
                assert_eq!(*c.im(), 0);
                (e, c.re().numer().to_i64().unwrap())
            })
            .collect()
    }

    #[test]
    fn theta1_at_zero_argument_cancels() {
        let s = theta_qseries(ThetaIndex::ONE, &z(), &[0], HalfPiShift::NONE, TauScale::One, 20).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn theta3_null_coefficients() {
        let s = theta_qseries(ThetaIndex::THREE, &z(), &[0], HalfPiShift::NONE, TauScale::One, 16).unwrap();
        assert_eq!(constant_coeffs(&s), vec![(0, 1), (4, 2), (16, 2)]);
    }

    #[test]
    fn quarter_turn_shift_maps_theta1_to_theta2() {
        let syms = AngleSymbols::new(["a", "b"]).unwrap();
        for t in -3..4 {
            let one = theta_qseries(
                ThetaIndex::ONE,
                &syms,
                &[1, -2],
                HalfPiShift::new(t + 1),
                TauScale::One,
                60,
            )
            .unwrap();
            let two = theta_qseries(ThetaIndex::TWO, &syms, &[1, -2], HalfPiShift::new(t), TauScale::One, 60).unwrap();
            assert_eq!(one, two, "t = {t}");
        }
    }

    #[test]
    fn half_scale_needs_even_grid() {
        assert!(matches!(
            theta_qseries(ThetaIndex::TWO, &z(), &[1], HalfPiShift::NONE, TauScale::Half, 10),
            Err(Error::Grid(_))
        ));
        let s = theta_qseries(ThetaIndex::THREE, &z(), &[0], HalfPiShift::NONE, TauScale::Half, 8).unwrap();
        assert_eq!(constant_coeffs(&s), vec![(0, 1), (2, 2), (8, 2)]);
    }

    #[test]
    fn euler_product_truncations() {
        let k = PochhammerKind::q2_q2();
        assert_eq!(constant_coeffs(&pochhammer_qseries(&k, &z(), 3).unwrap()), vec![(0, 1)]);
        assert_eq!(
            constant_coeffs(&pochhammer_qseries(&k, &z(), 8).unwrap()),
            vec![(0, 1), (8, -1)]
        );
        assert_eq!(
            constant_coeffs(&pochhammer_qseries(&k, &z(), 16).unwrap()),
            vec![(0, 1), (8, -1), (16, -1)]
        );
        let neg = pochhammer_qseries(&PochhammerKind::neg_q4_q4(), &z(), 40).unwrap();
        assert_eq!(constant_coeffs(&neg), vec![(0, 1), (16, 1), (32, 1)]);
    }

    #[test]
    fn triple_sum_low_terms() {
        let s = triple_sum_qseries(&z(), 0, 1).unwrap();
        // 1 − z at Q⁰ and −1/z + z² at Q¹
        assert_eq!(s.coeff(0).unwrap().coeff(&[0]), GaussianRational::one());
        assert_eq!(s.coeff(0).unwrap().coeff(&[1]), GaussianRational::from_int(-1));
        assert_eq!(s.coeff(1).unwrap().coeff(&[-1]), GaussianRational::from_int(-1));
        assert_eq!(s.coeff(1).unwrap().coeff(&[2]), GaussianRational::one());
        assert_eq!(s.support(), 4);
    }

    mod props {
        use super::*;
        use crate::numeric;
        use crate::params::{Precision, make_param, q_pow_ratio};
        use crate::theta::theta_series;
        use proptest::prelude::*;
        use rug::Complex;

        fn two() -> AngleSymbols {
            AngleSymbols::new(["a", "b"]).unwrap()
        }

        proptest! {
            #[test]
            fn negating_the_argument(j in 1u8..5, a in -3i64..4, b in -3i64..4, t in 0i64..4, order in 0i64..60) {
                let j = ThetaIndex::new(j).unwrap();
                let sh = HalfPiShift::new(t);
                let plus = theta_qseries(j, &two(), &[a, b], HalfPiShift::NONE, TauScale::One, order).unwrap();
                let minus = theta_qseries(j, &two(), &[-a, -b], HalfPiShift::NONE, TauScale::One, order).unwrap();
                let expected = if j == ThetaIndex::ONE { plus.neg() } else { plus.clone() };
                prop_assert_eq!(minus, expected);
                // With distinct monomials the shift only rotates coefficients by powers of i.
                if (a, b) != (0, 0) {
                    let shifted = theta_qseries(j, &two(), &[a, b], sh, TauScale::One, order).unwrap();
                    prop_assert_eq!(shifted.support(), plus.support());
                }
            }

            #[test]
            fn substitution_matches_numeric_theta(
                j in 1u8..5, (tr, ti) in (-1.0f64..1.0, 0.3833f64..1.5), (zr, zi) in (-2.0f64..2.0, -0.2f64..0.2),
            ) {
                // Im τ ≥ 0.3833 keeps |q| ≤ 0.3.
                let j = ThetaIndex::new(j).unwrap();
                let order = 200;
                let pr = Precision::new(128).unwrap();
                let p = make_param(&Complex::with_val(64, (tr, ti)), &pr).unwrap();
                let z = Complex::with_val(64, (zr, zi));
                let syms = AngleSymbols::new(["z"]).unwrap();
                let formal = theta_qseries(j, &syms, &[1], HalfPiShift::NONE, TauScale::One, order).unwrap();
                let got = formal.evaluate(&q_pow_ratio(&p, 1, 4, &pr), std::slice::from_ref(&z)).unwrap();
                let want = theta_series(j, &z, &p, &pr).unwrap();
                let q_abs = numeric::abs(p.q()).to_f64();
                let tail = 10.0 * q_abs.powf((order + 1) as f64 / 4.0);
                let r = numeric::relative_residual(&got, &want).to_f64();
                prop_assert!(r <= pr.eps() + tail, "residual {:e}, tail {:e}", r, tail);
            }
        }
    }
}
