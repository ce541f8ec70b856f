use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// Ordered names of the angle variables; exponent slot k belongs to name k.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleSymbols(Vec<String>);

impl AngleSymbols {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Domain("symbol table must not be empty".into()));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(Error::Domain(format!("duplicate symbol names in {names:?}")));
        }
        Ok(AngleSymbols(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector of a monomial e^{i(n₁s₁ + … + n_k s_k)}.
pub type Exponents = Vec<i64>;

/// Σ c · e^{i n·s} with Gaussian-rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponents: Exponents, coeff: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, &coeff);
        p
    }

    pub fn constant(nvars: usize, coeff: GaussianRational) -> Self {
        Self::monomial(vec![0; nvars], coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i64]) -> GaussianRational {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &-c.clone());
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    /// Adds `a · b` into `self` without materializing the product.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                self.add_term(e, &(c1 * c2));
            }
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * s));
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&GaussianRational::from_int(-1))
    }

    /// Replaces the symbol in slot `slot` by the angle `eighths · π/4`.
    ///
    /// e^{i n·eighths·π/4} is Gaussian-rational only when n·eighths is even.
    pub fn specialize_eighths(&self, slot: usize, eighths: i64) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let n = e[slot] * eighths;
            if n % 2 != 0 {
                return Err(Error::Grid(format!(
                    "angle exponent {} at {eighths}·π/4 leaves the Gaussian rationals",
                    e[slot]
                )));
            }
            let mut e = e.clone();
            e[slot] = 0;
            out.add_term(e, &c.mul_i_pow(n / 2));
        }
        Ok(out)
    }
}

/// Renders a monomial as `e^{i(2a - b)}` using the given names.
pub fn format_monomial(symbols: &AngleSymbols, exponents: &[i64]) -> String {
    let mut parts = String::new();
    for (name, &n) in symbols.names().iter().zip(exponents) {
        if n == 0 {
            continue;
        }
        let sign = if n < 0 {
            "-"
        } else if parts.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = n.unsigned_abs();
        if mag == 1 {
            parts.push_str(&format!("{sign}{name}"));
        } else {
            parts.push_str(&format!("{sign}{mag}{name}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        format!("e^{{i({parts})}}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})·{e:?}")).collect();
        f.write_str(&rendered.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_tables_validate() {
        assert!(AngleSymbols::new(Vec::<String>::new()).is_err());
        assert!(AngleSymbols::new(["a", "a"]).is_err());
        let s = AngleSymbols::new(["a", "b"]).unwrap();
        assert_eq!(s.index_of("b"), Some(1));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = LaurentPoly::monomial(vec![1, 0], GaussianRational::from_int(2));
        p.add_term(vec![1, 0], &GaussianRational::from_int(-2));
        assert!(p.is_zero());
    }

    #[test]
    fn product_of_binomials() {
        // (e^{ia} + e^{-ia})² = e^{2ia} + 2 + e^{-2ia}
        let mut p = LaurentPoly::monomial(vec![1], GaussianRational::one());
        p.add_term(vec![-1], &GaussianRational::one());
        let sq = p.mul(&p);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&[0]), GaussianRational::from_int(2));
    }

    #[test]
    fn specialization_at_quarter_pi() {
        // e^{2iz} at z = π/4 is i.
        let p = LaurentPoly::monomial(vec![2], GaussianRational::one());
        let s = p.specialize_eighths(0, 1).unwrap();
        assert_eq!(s.coeff(&[0]), GaussianRational::i());
        let odd = LaurentPoly::monomial(vec![1], GaussianRational::one());
        assert!(matches!(odd.specialize_eighths(0, 1), Err(Error::Grid(_))));
    }

    #[test]
    fn monomial_rendering() {
        let s = AngleSymbols::new(["a", "b", "x"]).unwrap();
        assert_eq!(format_monomial(&s, &[2, -1, 0]), "e^{i(2a-b)}");
        assert_eq!(format_monomial(&s, &[0, 0, 0]), "1");
    }
}
