//! Small helpers around `rug` values: literal parsing, magnitudes, formatting.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub fn zero(bits: u32) -> Complex {
    Complex::new(bits)
}

pub fn one(bits: u32) -> Complex {
    Complex::with_val(bits, 1)
}

/// The imaginary unit.
pub fn i_unit(bits: u32) -> Complex {
    Complex::with_val(bits, (0, 1))
}

/// Parses a decimal real such as `0.1`, `-2.5e-3` or `7`.
pub fn real(bits: u32, text: &str) -> Result<Float> {
    let parsed = Float::parse(text.trim()).map_err(|e| Error::Domain(format!("invalid real `{text}`: {e}")))?;
    Ok(Float::with_val(bits, parsed))
}

/// Parses a complex literal: `1.2i`, `0.3+1.1i`, `-i`, `2`, `1-0.5i`.
pub fn complex(bits: u32, text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Domain(format!("invalid complex literal `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::with_val(bits, (real(bits, &s)?, 0)));
    };
    // Split at the last sign that is not the leading one and not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_text, im_text) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("0", body),
    };
    let im = match im_text {
        "" | "+" => Float::with_val(bits, 1),
        "-" => Float::with_val(bits, -1),
        other => real(bits, other).map_err(|_| bad())?,
    };
    let re = real(bits, re_text).map_err(|_| bad())?;
    Ok(Complex::with_val(bits, (re, im)))
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// log2 |z| as an f64, `-inf` for zero. Never underflows, unlike `abs().to_f64()`.
pub fn log2_abs(z: &Complex) -> f64 {
    let a = abs(z);
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mantissa, exp) = a.to_f64_exp();
    mantissa.log2() + f64::from(exp)
}

pub fn log2_real(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (mantissa, exp) = x.to_f64_exp();
    mantissa.abs().log2() + f64::from(exp)
}

/// |a − b| / max(1, |a|, |b|).
pub fn relative_residual(a: &Complex, b: &Complex) -> Float {
    let bits = a.prec().0.max(b.prec().0);
    let diff = abs(&Complex::with_val(bits, a - b));
    let mut scale = Float::with_val(bits, 1);
    scale.max_mut(&abs(a));
    scale.max_mut(&abs(b));
    diff / scale
}

/// 2^(−k) as a Float.
pub fn pow2_neg(bits: u32, k: i64) -> Float {
    Float::with_val(bits, 2).pow(-k)
}

/// Full-precision decimal rendering of a real.
pub fn format_real(x: &Float) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = (f64::from(x.prec()) * std::f64::consts::LOG10_2).ceil() as usize;
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Rendering such as `0.3+1.1i`, `-0.25i`, `2`.
pub fn format_complex(z: &Complex) -> String {
    let re = z.real();
    let im = z.imag();
    if im.is_zero() {
        return format_real(re);
    }
    let im_text = format_real(im);
    if re.is_zero() {
        return format!("{im_text}i");
    }
    if im.is_sign_negative() {
        format!("{}{}i", format_real(re), im_text)
    } else {
        format!("{}+{}i", format_real(re), im_text)
    }
}

/// Short rendering with `digits` significant digits, for tables.
pub fn format_complex_short(z: &Complex, digits: usize) -> String {
    let re = z.real().to_f64();
    let im = z.imag().to_f64();
    if im == 0.0 {
        format!("{re:.digits$e}")
    } else if im < 0.0 {
        format!("{re:.digits$e}{im:.digits$e}i")
    } else {
        format!("{re:.digits$e}+{im:.digits$e}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = complex(64, "0.3+1.1i").unwrap();
        assert!((c.real().to_f64() - 0.3).abs() < 1e-15);
        assert!((c.imag().to_f64() - 1.1).abs() < 1e-15);
        assert_eq!(complex(64, "-i").unwrap(), Complex::with_val(64, (0, -1)));
        assert_eq!(complex(64, "i").unwrap(), Complex::with_val(64, (0, 1)));
        assert_eq!(complex(64, "2").unwrap(), Complex::with_val(64, (2, 0)));
        let e = complex(64, "1e-3-2.5e+1i").unwrap();
        assert!((e.real().to_f64() - 1e-3).abs() < 1e-18);
        assert_eq!(e.imag().to_f64(), -25.0);
        assert!(complex(64, "1+").is_err());
        assert!(complex(64, "abc").is_err());
    }

    #[test]
    fn log2_abs_does_not_underflow() {
        let tiny = Complex::with_val(64, (pow2_neg(64, 5000), 0));
        assert_eq!(log2_abs(&tiny), -5000.0);
        assert_eq!(log2_abs(&zero(64)), f64::NEG_INFINITY);
    }

    #[test]
    fn residual_uses_unit_floor() {
        let a = Complex::with_val(64, (1e-3, 0));
        let b = Complex::with_val(64, (2e-3, 0));
        assert!((relative_residual(&a, &b).to_f64() - 1e-3).abs() < 1e-15);
    }
}
