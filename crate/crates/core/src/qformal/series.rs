use std::collections::BTreeMap;

use rug::Complex;

use super::gaussian::GaussianRational;
use super::laurent::{AngleSymbols, Exponents, LaurentPoly};
use crate::error::{Error, Result};

/// Truncated series Σ_{e ≤ order} c_e(s) Qᵉ with Laurent-polynomial coefficients.
///
/// Results of arithmetic carry the smaller operand order. Truncation is a ring
/// homomorphism as long as every exponent present is non-negative, which holds
/// for all theta and Pochhammer expansions built here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    symbols: AngleSymbols,
    order: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl QSeries {
    pub fn zero(symbols: AngleSymbols, order: i64) -> Self {
        QSeries {
            symbols,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(symbols: AngleSymbols, order: i64) -> Self {
        Self::constant(symbols, order, GaussianRational::one())
    }

    pub fn constant(symbols: AngleSymbols, order: i64, c: GaussianRational) -> Self {
        let n = symbols.len();
        let mut s = Self::zero(symbols, order);
        s.add_term(0, LaurentPoly::constant(n, c));
        s
    }

    /// c · Q^e · e^{i n·s}
    pub fn monomial(symbols: AngleSymbols, order: i64, q_exp: i64, exponents: Exponents, c: GaussianRational) -> Self {
        let mut s = Self::zero(symbols, order);
        s.add_term(q_exp, LaurentPoly::monomial(exponents, c));
        s
    }

    pub fn symbols(&self) -> &AngleSymbols {
        &self.symbols
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest Q-exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, q_exp: i64) -> Option<&LaurentPoly> {
        self.coeffs.get(&q_exp)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs.iter().map(|(e, p)| (*e, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero (Q-exponent, monomial) coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.values().map(LaurentPoly::len).sum()
    }

    /// Lowest Q-exponent, then lexicographically smallest monomial.
    pub fn first_nonzero(&self) -> Option<(i64, &Exponents, &GaussianRational)> {
        let (e, p) = self.coeffs.iter().next()?;
        let (m, c) = p.terms().next()?;
        Some((*e, m, c))
    }

    /// Adds `poly · Q^e`, dropping it beyond the order.
    pub fn add_term(&mut self, q_exp: i64, poly: LaurentPoly) {
        if q_exp > self.order || poly.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(q_exp).or_default();
        slot.add_assign(&poly);
        if slot.is_zero() {
            self.coeffs.remove(&q_exp);
        }
    }

    fn check_symbols(&self, other: &QSeries) -> Result<()> {
        if self.symbols != other.symbols {
            return Err(Error::SymbolMismatch {
                left: self.symbols.names().to_vec(),
                right: other.symbols.names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn truncate(&self, order: i64) -> QSeries {
        let order = order.min(self.order);
        QSeries {
            symbols: self.symbols.clone(),
            order,
            coeffs: self.coeffs.range(..=order).map(|(e, p)| (*e, p.clone())).collect(),
        }
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_symbols(other)?;
        let mut out = self.truncate(other.order);
        for (e, p) in &other.coeffs {
            out.add_term(*e, p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn scale(&self, s: &GaussianRational) -> QSeries {
        let mut out = QSeries::zero(self.symbols.clone(), self.order);
        for (e, p) in &self.coeffs {
            out.add_term(*e, p.scale(s));
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_symbols(other)?;
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e1, p1) in &self.coeffs {
            for (e2, p2) in other.coeffs.range(..=order - e1) {
                acc.entry(e1 + e2).or_default().add_product(p1, p2);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(QSeries {
            symbols: self.symbols.clone(),
            order,
            coeffs: acc,
        })
    }

    /// Multiplies by Q^shift, keeping the order.
    pub fn shift(&self, q_shift: i64) -> QSeries {
        let mut out = QSeries::zero(self.symbols.clone(), self.order);
        for (e, p) in &self.coeffs {
            out.add_term(e + q_shift, p.clone());
        }
        out
    }

    /// Evaluates the symbol in `slot` at `eighths · π/4`.
    pub fn specialize_eighths(&self, slot: usize, eighths: i64) -> Result<QSeries> {
        let mut out = QSeries::zero(self.symbols.clone(), self.order);
        for (e, p) in &self.coeffs {
            out.add_term(*e, p.specialize_eighths(slot, eighths)?);
        }
        Ok(out)
    }

    /// Numeric value with Q and the angles substituted.
    pub fn evaluate(&self, q_value: &Complex, angles: &[Complex]) -> Result<Complex> {
        if angles.len() != self.symbols.len() {
            return Err(Error::Domain(format!(
                "expected {} angle values, got {}",
                self.symbols.len(),
                angles.len()
            )));
        }
        let bits = q_value.prec().0;
        let mut total = Complex::new(bits);
        for (e, p) in &self.coeffs {
            let mut inner = Complex::new(bits);
            for (m, c) in p.terms() {
                let mut phase = Complex::new(bits);
                for (n, a) in m.iter().zip(angles) {
                    phase += Complex::with_val(bits, a * *n);
                }
                phase.mul_i_mut(false);
                let coeff = Complex::with_val(bits, (c.re(), c.im()));
                inner += phase.exp() * coeff;
            }
            let qe = Complex::with_val(bits, rug::ops::Pow::pow(q_value, *e as i32));
            total += inner * qe;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms() -> AngleSymbols {
        AngleSymbols::new(["a"]).unwrap()
    }

    fn mono(order: i64, e: i64, n: i64, c: i64) -> QSeries {
        QSeries::monomial(syms(), order, e, vec![n], GaussianRational::from_int(c))
    }

    #[test]
    fn self_difference_is_zero() {
        let s = mono(10, 1, 1, 3).add(&mono(10, 4, -2, 5)).unwrap();
        assert!(s.sub(&s).unwrap().is_zero());
    }

    #[test]
    fn one_is_identity() {
        let s = mono(10, 1, 1, 3).add(&mono(10, 4, -2, 5)).unwrap();
        assert_eq!(s.mul(&QSeries::one(syms(), 10)).unwrap(), s);
    }

    #[test]
    fn product_beyond_order_vanishes() {
        let p = mono(1, 1, 1, 1).mul(&mono(1, 1, -1, 1)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn result_order_is_minimum() {
        let p = mono(3, 0, 0, 1).add(&mono(7, 5, 0, 1)).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.support(), 1);
    }

    #[test]
    fn mismatched_symbols_rejected() {
        let other = QSeries::one(AngleSymbols::new(["b"]).unwrap(), 4);
        assert!(matches!(
            mono(4, 0, 0, 1).mul(&other),
            Err(Error::SymbolMismatch { .. })
        ));
    }

    #[test]
    fn first_nonzero_ordering() {
        let s = mono(10, 3, 2, 1)
            .add(&mono(10, 3, -1, 7))
            .unwrap()
            .add(&mono(10, 5, -9, 1))
            .unwrap();
        let (e, m, c) = s.first_nonzero().unwrap();
        assert_eq!((e, m.as_slice(), c), (3, &[-1i64][..], &GaussianRational::from_int(7)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn two() -> AngleSymbols {
            AngleSymbols::new(["a", "b"]).unwrap()
        }

        fn small_series() -> impl Strategy<Value = QSeries> {
            let term = (0i64..7, -2i64..3, -2i64..3, -4i64..5, -4i64..5);
            (4i64..9, prop::collection::vec(term, 0..6)).prop_map(|(order, terms)| {
                let mut s = QSeries::zero(two(), order);
                for (e, m, n, re, im) in terms {
                    s.add_term(e, LaurentPoly::monomial(vec![m, n], GaussianRational::new(re, im)));
                }
                s
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in small_series(), b in small_series(), c in small_series()) {
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
                let left = a.mul(&b.add(&c).unwrap()).unwrap();
                let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
                prop_assert!(a.sub(&a).unwrap().is_zero());
            }
        }
    }
}
