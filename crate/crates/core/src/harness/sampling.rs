use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

use crate::error::{Error, Result};
use crate::numeric;
use crate::params::{ModularParam, Precision, make_param};

/// How free variables and parameters are drawn for numeric checks.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStrategy {
    pub count: usize,
    pub real_box: (f64, f64),
    pub imag_box: (f64, f64),
    pub seed: u64,
    /// τ values as text, parsed at the working precision.
    pub tau_set: Vec<String>,
}

impl Default for SampleStrategy {
    fn default() -> Self {
        SampleStrategy {
            count: 20,
            real_box: (-2.0, 2.0),
            imag_box: (-0.2, 0.2),
            seed: 42,
            tau_set: vec!["1.2i".into(), "0.3+1.1i".into()],
        }
    }
}

impl SampleStrategy {
    pub fn validate(&self) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if self.count == 0 {
            return Err(Error::Domain("sample count must be at least 1".into()));
        }
        if !ok(self.real_box) || !ok(self.imag_box) {
            return Err(Error::Domain("sampling boxes need finite lo < hi".into()));
        }
        if self.tau_set.is_empty() {
            return Err(Error::Domain("tau set is empty".into()));
        }
        Ok(())
    }

    /// Parses every τ; rejects Im τ ≤ 0.
    pub fn params(&self, prec: &Precision) -> Result<Vec<(String, ModularParam)>> {
        self.tau_set
            .iter()
            .map(|t| Ok((t.clone(), make_param(&numeric::complex(prec.work_bits(), t)?, prec)?)))
            .collect()
    }

    /// Independent stream per (identity, τ), so results do not depend on run order.
    pub fn rng(&self, identity: &str, tau: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(fnv1a([identity.as_bytes(), b"\0", tau.as_bytes()]));
        rng
    }

    /// One point; `real_only` zeroes the imaginary parts.
    pub fn draw(&self, rng: &mut ChaCha8Rng, nvars: usize, real_only: bool, bits: u32) -> Vec<Complex> {
        (0..nvars)
            .map(|_| {
                let re = rng.random_range(self.real_box.0..self.real_box.1);
                let im = rng.random_range(self.imag_box.0..self.imag_box.1);
                Complex::with_val(bits, (re, if real_only { 0.0 } else { im }))
            })
            .collect()
    }
}

fn fnv1a<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in parts.into_iter().flatten() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = SampleStrategy::default();
        let a = s.draw(&mut s.rng("x", "1.2i"), 3, false, 64);
        let b = s.draw(&mut s.rng("x", "1.2i"), 3, false, 64);
        let c = s.draw(&mut s.rng("y", "1.2i"), 3, false, 64);
        assert_eq!(a, b);
        assert_ne!(a, c);
        for z in &a {
            assert!(*z.real() > -2 && *z.real() < 2 && *z.imag() > -0.2 && *z.imag() < 0.2);
        }
        let r = s.draw(&mut s.rng("x", "1.2i"), 2, true, 64);
        assert!(r.iter().all(|z| z.imag().is_zero()));
    }

    #[test]
    fn validation() {
        assert!(SampleStrategy::default().validate().is_ok());
        let bad = SampleStrategy {
            count: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SampleStrategy {
            real_box: (1.0, 1.0),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SampleStrategy {
            tau_set: vec!["-1i".into()],
            ..Default::default()
        };
        assert!(bad.params(&Precision::new(64).unwrap()).is_err());
    }
}
