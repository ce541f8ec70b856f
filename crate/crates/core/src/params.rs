//! The modular parameter τ, its nome q = e^{iπτ}, and the precision policy.
//!
//! Every complex power of q in this crate goes through [`q_pow`], which is
//! defined as exp(iπτw). No principal-branch power of the numeric nome is
//! ever taken, so q^{1/4} and q^{(z−1/2)²} have a single meaning.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric;

/// Guard bits added on top of [`Precision::bits`] for internal arithmetic.
pub const GUARD_BITS: u32 = 16;

/// Binary precision together with the acceptance tolerance that goes with it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    bits: u32,
    eps: f64,
}

impl Precision {
    /// `bits` of mantissa with the default tolerance 2^(−bits+16).
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 53 {
            return Err(Error::Domain(format!("precision must be at least 53 bits, got {bits}")));
        }
        Ok(Precision {
            bits,
            eps: 2f64.powi(16 - bits as i32),
        })
    }

    pub fn with_eps(bits: u32, eps: f64) -> Result<Self> {
        let mut p = Self::new(bits)?;
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
        }
        p.eps = eps;
        Ok(p)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Precision used for intermediate values.
    pub fn work_bits(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    /// log2 of the truncation threshold for series and products.
    pub(crate) fn log2_cutoff(&self) -> f64 {
        -f64::from(self.work_bits())
    }

    /// The same tolerance policy at twice the bits.
    pub fn doubled(&self) -> Self {
        Precision::new(self.bits * 2).expect("doubling keeps bits >= 53")
    }
}

/// Which of the three parameter maps used by the identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// τ ↦ −1/τ
    S,
    /// τ ↦ 2τ
    Double,
    /// τ ↦ τ/2
    Half,
}

/// Half-period ratio τ (Im τ > 0) and its nome q = exp(iπτ).
#[derive(Debug, Clone, PartialEq)]
pub struct ModularParam {
    tau: Complex,
    q: Complex,
}

impl ModularParam {
    pub fn tau(&self) -> &Complex {
        &self.tau
    }

    pub fn q(&self) -> &Complex {
        &self.q
    }

    /// Parameter for the nome q^m, i.e. τ ↦ m·τ.
    pub fn scaled(&self, m: u32) -> Self {
        let bits = self.tau.prec().0;
        build(Complex::with_val(bits, &self.tau * m))
    }
}

fn build(tau: Complex) -> ModularParam {
    let bits = tau.prec().0;
    let mut exponent = Complex::with_val(bits, &tau * numeric::pi(bits));
    exponent.mul_i_mut(false);
    let q = exponent.exp();
    ModularParam { tau, q }
}

/// Validates Im τ > 0 and computes the nome at the working precision.
pub fn make_param(tau: &Complex, prec: &Precision) -> Result<ModularParam> {
    if tau.imag().is_nan() || tau.real().is_nan() || *tau.imag() <= 0 {
        return Err(Error::Domain(format!(
            "Im(tau) must be positive, got tau = {}",
            numeric::format_complex(tau)
        )));
    }
    let bits = prec.work_bits().max(tau.prec().0);
    Ok(build(Complex::with_val(bits, tau)))
}

/// The purely imaginary τ = ln(q)/(iπ) for a real nome 0 < q < 1.
pub fn from_real_nome(q: &Float, prec: &Precision) -> Result<ModularParam> {
    if !(*q > 0 && *q < 1) {
        return Err(Error::Domain(format!("real nome must lie in (0, 1), got {q}")));
    }
    let bits = prec.work_bits().max(q.prec());
    let log = Float::with_val(bits, q.ln_ref());
    let im = -log / numeric::pi(bits);
    make_param(&Complex::with_val(bits, (0, im)), prec)
}

/// q^w := exp(iπτw).
pub fn q_pow(p: &ModularParam, w: &Complex, prec: &Precision) -> Complex {
    let bits = prec.work_bits();
    let mut exponent = Complex::with_val(bits, &p.tau * w);
    exponent *= numeric::pi(bits);
    exponent.mul_i_mut(false);
    exponent.exp()
}

/// q^r for a small rational exponent r = num/den.
pub fn q_pow_ratio(p: &ModularParam, num: i64, den: i64, prec: &Precision) -> Complex {
    let bits = prec.work_bits();
    let w = Complex::with_val(bits, Float::with_val(bits, num) / den);
    q_pow(p, &w, prec)
}

pub fn transform(p: &ModularParam, kind: Transform) -> ModularParam {
    let bits = p.tau.prec().0;
    let tau = match kind {
        Transform::S => Complex::with_val(bits, -1) / &p.tau,
        Transform::Double => Complex::with_val(bits, &p.tau * 2u32),
        Transform::Half => Complex::with_val(bits, &p.tau / 2u32),
    };
    build(tau)
}
