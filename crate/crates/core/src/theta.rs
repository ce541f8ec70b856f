//! Numerical Jacobi theta functions θ₁..θ₄ in the convention
//! θ₃(z|τ) = Σ q^{k²} e^{2kiz}, q = e^{iπτ}, evaluated either from the
//! bilateral series or from the Jacobi product forms.

use std::fmt;

use rug::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, log2_abs};
use crate::params::{self, ModularParam, Precision, Transform, q_pow, q_pow_ratio};

/// Subscript j of θ_j, always one of 1, 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct ThetaIndex(u8);

impl ThetaIndex {
    pub const ONE: ThetaIndex = ThetaIndex(1);
    pub const TWO: ThetaIndex = ThetaIndex(2);
    pub const THREE: ThetaIndex = ThetaIndex(3);
    pub const FOUR: ThetaIndex = ThetaIndex(4);
    pub const ALL: [ThetaIndex; 4] = [Self::ONE, Self::TWO, Self::THREE, Self::FOUR];

    pub fn new(j: u8) -> Result<Self> {
        if (1..=4).contains(&j) {
            Ok(ThetaIndex(j))
        } else {
            Err(Error::Domain(format!("theta index must be 1..4, got {j}")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// θ₁ and θ₂ carry the q^{1/4} prefactor and odd frequencies.
    pub fn is_half_integral(self) -> bool {
        self.0 <= 2
    }
}

impl TryFrom<u8> for ThetaIndex {
    type Error = Error;
    fn try_from(j: u8) -> Result<Self> {
        ThetaIndex::new(j)
    }
}

impl From<ThetaIndex> for u8 {
    fn from(j: ThetaIndex) -> u8 {
        j.0
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Hard cap on the number of series blocks or product factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesControl {
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { max_terms: 10_000 }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(SeriesControl { max_terms })
    }
}

/// Tracks the stopping rule shared by the bilateral sums: a block may end the
/// sum once its magnitude bound is below the cutoff relative to the largest
/// partial sum seen, and the bounds have started to halve.
struct Truncation {
    cutoff: f64,
    scale: f64,
    previous: f64,
}

impl Truncation {
    fn new(prec: &Precision) -> Self {
        Truncation {
            cutoff: prec.log2_cutoff(),
            scale: 0.0,
            previous: f64::INFINITY,
        }
    }

    fn observe_sum(&mut self, sum: &Complex) {
        self.scale = self.scale.max(log2_abs(sum));
    }

    /// `bound` is log2 of an upper bound for the block just added.
    fn should_stop(&mut self, bound: f64) -> bool {
        let done = bound < self.cutoff + self.scale && bound <= self.previous - 1.0;
        self.previous = bound;
        done
    }
}

fn exp_i(z: &Complex, factor: i32, bits: u32) -> Complex {
    let mut w = Complex::with_val(bits, z * factor);
    w.mul_i_mut(false);
    w.exp()
}

/// θ_j(z|τ) from the defining bilateral series.
pub fn theta_series(j: ThetaIndex, z: &Complex, p: &ModularParam, prec: &Precision) -> Result<Complex> {
    theta_series_with(j, z, p, prec, &SeriesControl::default())
}

pub fn theta_series_with(
    j: ThetaIndex,
    z: &Complex,
    p: &ModularParam,
    prec: &Precision,
    ctl: &SeriesControl,
) -> Result<Complex> {
    let bits = prec.work_bits();
    let q = q_pow(p, &numeric::one(bits), prec);
    let q2 = Complex::with_val(bits, q.square_ref());
    let mut trunc = Truncation::new(prec);

    if j.is_half_integral() {
        // Blocks pair k with −k−1: q^{k(k+1)} (E_k ∓ 1/E_k), E_k = e^{(2k+1)iz}.
        let step = exp_i(z, 2, bits);
        let step_inv = exp_i(z, -2, bits);
        let mut e_pos = exp_i(z, 1, bits);
        let mut e_neg = exp_i(z, -1, bits);
        let mut qk = numeric::one(bits);
        let mut qstep = q2.clone();
        let mut sum = numeric::zero(bits);
        let mut converged = false;
        for k in 0..ctl.max_terms {
            let mut block = if j == ThetaIndex::ONE {
                Complex::with_val(bits, &e_pos - &e_neg)
            } else {
                Complex::with_val(bits, &e_pos + &e_neg)
            };
            block *= &qk;
            if j == ThetaIndex::ONE && k % 2 == 1 {
                sum -= &block;
            } else {
                sum += &block;
            }
            trunc.observe_sum(&sum);
            let bound = log2_abs(&qk) + log2_abs(&e_pos).max(log2_abs(&e_neg)) + 1.0;
            if trunc.should_stop(bound) {
                converged = true;
                break;
            }
            qk *= &qstep;
            qstep *= &q2;
            e_pos *= &step;
            e_neg *= &step_inv;
        }
        if !converged {
            return Err(Error::convergence(format!("theta{j} series"), ctl.max_terms));
        }
        let mut prefactor = q_pow_ratio(p, 1, 4, prec);
        if j == ThetaIndex::ONE {
            prefactor.mul_i_mut(true);
        }
        Ok(sum * prefactor)
    } else {
        // 1 + Σ_{k≥1} (±1)^k q^{k²} (F_k + 1/F_k), F_k = e^{2kiz}.
        let step = exp_i(z, 2, bits);
        let step_inv = exp_i(z, -2, bits);
        let mut f_pos = step.clone();
        let mut f_neg = step_inv.clone();
        let mut qk = q.clone();
        let mut qstep = Complex::with_val(bits, &q * &q2);
        let mut sum = numeric::one(bits);
        trunc.observe_sum(&sum);
        let mut converged = false;
        for k in 1..=ctl.max_terms {
            let block = Complex::with_val(bits, &f_pos + &f_neg) * &qk;
            if j == ThetaIndex::FOUR && k % 2 == 1 {
                sum -= &block;
            } else {
                sum += &block;
            }
            trunc.observe_sum(&sum);
            let bound = log2_abs(&qk) + log2_abs(&f_pos).max(log2_abs(&f_neg)) + 1.0;
            if trunc.should_stop(bound) {
                converged = true;
                break;
            }
            qk *= &qstep;
            qstep *= &q2;
            f_pos *= &step;
            f_neg *= &step_inv;
        }
        if !converged {
            return Err(Error::convergence(format!("theta{j} series"), ctl.max_terms));
        }
        Ok(sum)
    }
}

/// (a; nome)_∞ = Π_{n≥0} (1 − a·nomeⁿ).
///
/// Stops at the first n with |a|·|nome|ⁿ/(1 − |nome|) below the working
/// cutoff, which bounds the log of the omitted factors.
pub fn q_pochhammer(a: &Complex, nome: &Complex, prec: &Precision, ctl: &SeriesControl) -> Result<Complex> {
    let bits = prec.work_bits();
    let nome_abs = numeric::abs(nome);
    if nome_abs >= 1 {
        return Err(Error::Domain(format!(
            "Pochhammer nome must satisfy |nome| < 1, got |nome| = {}",
            nome_abs.to_f64()
        )));
    }
    let tail = -(1.0 - nome_abs.to_f64()).log2();
    let cutoff = prec.log2_cutoff();
    let mut term = Complex::with_val(bits, a);
    let mut product = numeric::one(bits);
    for _ in 0..ctl.max_terms {
        if log2_abs(&term) + tail < cutoff {
            return Ok(product);
        }
        product *= Complex::with_val(bits, 1 - &term);
        term *= nome;
    }
    Err(Error::convergence("q-Pochhammer product", ctl.max_terms))
}

/// θ_j(z|τ) from the Jacobi products; θ₄ is taken as θ₃(z + π/2|τ).
pub fn theta_product(j: ThetaIndex, z: &Complex, p: &ModularParam, prec: &Precision) -> Result<Complex> {
    let bits = prec.work_bits();
    let ctl = SeriesControl::default();
    if j == ThetaIndex::FOUR {
        let shifted = Complex::with_val(bits, z + numeric::pi(bits) / 2u32);
        return theta_product(ThetaIndex::THREE, &shifted, p, prec);
    }
    let q = q_pow(p, &numeric::one(bits), prec);
    let q2 = Complex::with_val(bits, q.square_ref());
    let e2 = exp_i(z, 2, bits);
    let e2_inv = exp_i(z, -2, bits);
    let euler = q_pochhammer(&q2, &q2, prec, &ctl)?;
    match j.get() {
        1 | 2 => {
            let mut a = Complex::with_val(bits, &q2 * &e2);
            let mut b = Complex::with_val(bits, &q2 * &e2_inv);
            let mut trig = Complex::with_val(bits, z);
            if j == ThetaIndex::ONE {
                trig.sin_mut();
            } else {
                a = -a;
                b = -b;
                trig.cos_mut();
            }
            let prod = euler * q_pochhammer(&a, &q2, prec, &ctl)? * q_pochhammer(&b, &q2, prec, &ctl)?;
            Ok(prod * trig * q_pow_ratio(p, 1, 4, prec) * 2u32)
        }
        _ => {
            let a = -Complex::with_val(bits, &q * &e2);
            let b = -Complex::with_val(bits, &q * &e2_inv);
            Ok(euler * q_pochhammer(&a, &q2, prec, &ctl)? * q_pochhammer(&b, &q2, prec, &ctl)?)
        }
    }
}

/// ϑ_j(τ) = θ_j(0|τ).
pub fn theta_null(j: ThetaIndex, p: &ModularParam, prec: &Precision) -> Result<Complex> {
    theta_series(j, &numeric::zero(prec.work_bits()), p, prec)
}

/// (θ₁(z + π/2|τ), θ₂(z|τ)).
pub fn shift_half_pi(z: &Complex, p: &ModularParam, prec: &Precision) -> Result<(Complex, Complex)> {
    let bits = prec.work_bits();
    let shifted = Complex::with_val(bits, z + numeric::pi(bits) / 2u32);
    Ok((
        theta_series(ThetaIndex::ONE, &shifted, p, prec)?,
        theta_series(ThetaIndex::TWO, z, p, prec)?,
    ))
}

/// (θ₁(z + (π + πτ)/2|τ), q^{−1/4} e^{−iz} θ₃(z|τ)).
///
/// The second component is amplified by q^{−1/4}; compare the pair with
/// [`pair_residual`], which scales by the larger magnitude.
pub fn shift_half_period(z: &Complex, p: &ModularParam, prec: &Precision) -> Result<(Complex, Complex)> {
    let bits = prec.work_bits();
    let pi = numeric::pi(bits);
    let offset = Complex::with_val(bits, p.tau() * &pi) + &pi;
    let shifted = Complex::with_val(bits, z + offset / 2u32);
    let left = theta_series(ThetaIndex::ONE, &shifted, p, prec)?;
    let right = theta_series(ThetaIndex::THREE, z, p, prec)? * q_pow_ratio(p, -1, 4, prec) * exp_i(z, -1, bits);
    Ok((left, right))
}

/// (θ₁(π/4|τ), √2 q^{1/4} (q²;q²)_∞ (−q⁴;q⁴)_∞).
pub fn theta1_quarter_pi(p: &ModularParam, prec: &Precision) -> Result<(Complex, Complex)> {
    let bits = prec.work_bits();
    let ctl = SeriesControl::default();
    let quarter = Complex::with_val(bits, numeric::pi(bits) / 4u32);
    let left = theta_series(ThetaIndex::ONE, &quarter, p, prec)?;
    let q2 = q_pow(p, &Complex::with_val(bits, 2), prec);
    let q4 = Complex::with_val(bits, q2.square_ref());
    let neg_q4 = Complex::with_val(bits, -&q4);
    let sqrt2 = rug::Float::with_val(bits, 2).sqrt();
    let right = q_pochhammer(&q2, &q2, prec, &ctl)?
        * q_pochhammer(&neg_q4, &q4, prec, &ctl)?
        * q_pow_ratio(p, 1, 4, prec)
        * sqrt2;
    Ok((left, right))
}

/// Both sides of 2θ₂(z|2τ)θ₃(z|2τ) = ϑ₂(τ)θ₂(z|τ) and ϑ₂(τ)² = 2ϑ₂(2τ)ϑ₃(2τ).
pub fn doubling_identities(
    z: &Complex,
    p: &ModularParam,
    prec: &Precision,
) -> Result<((Complex, Complex), (Complex, Complex))> {
    let doubled = params::transform(p, Transform::Double);
    let null2 = theta_null(ThetaIndex::TWO, p, prec)?;
    let first = (
        theta_series(ThetaIndex::TWO, z, &doubled, prec)? * theta_series(ThetaIndex::THREE, z, &doubled, prec)? * 2u32,
        Complex::with_val(prec.work_bits(), &null2 * theta_series(ThetaIndex::TWO, z, p, prec)?),
    );
    let second = (
        Complex::with_val(prec.work_bits(), null2.square_ref()),
        theta_null(ThetaIndex::TWO, &doubled, prec)? * theta_null(ThetaIndex::THREE, &doubled, prec)? * 2u32,
    );
    Ok((first, second))
}

/// Both sides of Σ(−1)ⁿ nome^{n(n−1)/2} zⁿ = (nome;nome)_∞ (z;nome)_∞ (nome/z;nome)_∞.
pub fn triple_product_check(z: &Complex, nome: &Complex, prec: &Precision) -> Result<(Complex, Complex)> {
    if z.real().is_zero() && z.imag().is_zero() {
        return Err(Error::Domain("triple product needs z != 0".into()));
    }
    let bits = prec.work_bits();
    let ctl = SeriesControl::default();
    let product = q_pochhammer(nome, nome, prec, &ctl)?
        * q_pochhammer(z, nome, prec, &ctl)?
        * q_pochhammer(&Complex::with_val(bits, nome / z), nome, prec, &ctl)?;

    // Positive n: t_{n+1} = −t_n·nomeⁿ·z. Negative n: t_{−n−1} = −t_{−n}·nome^{n+1}/z.
    let mut sum = numeric::one(bits);
    let z_inv = Complex::with_val(bits, 1 / z);
    let pairs = [
        (numeric::one(bits), Complex::with_val(bits, z)),
        (Complex::with_val(bits, nome), z_inv),
    ];
    for (step_start, ratio) in pairs {
        let mut trunc = Truncation::new(prec);
        trunc.observe_sum(&sum);
        let mut term = numeric::one(bits);
        let mut nome_pow = step_start;
        let mut converged = false;
        for _ in 0..ctl.max_terms {
            term *= &nome_pow;
            term *= &ratio;
            term = -term;
            sum += &term;
            trunc.observe_sum(&sum);
            if trunc.should_stop(log2_abs(&term)) {
                converged = true;
                break;
            }
            nome_pow *= nome;
        }
        if !converged {
            return Err(Error::convergence("triple product bilateral sum", ctl.max_terms));
        }
    }
    Ok((sum, product))
}

/// Relative discrepancy of a pair, scaled by max(1, |a|, |b|).
pub fn pair_residual(pair: &(Complex, Complex)) -> f64 {
    numeric::relative_residual(&pair.0, &pair.1).to_f64()
}
