//! Coefficient-by-coefficient verification of theta-level identities.

use serde::{Deserialize, Serialize};

use super::expand::{HalfPiShift, PochhammerKind, TauScale, pochhammer_qseries, theta_qseries, triple_sum_qseries};
use super::gaussian::GaussianRational;
use super::laurent::{AngleSymbols, format_monomial};
use super::series::QSeries;
use crate::error::{Error, Result};
use crate::theta::ThetaIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Theta {
        j: ThetaIndex,
        arg: Vec<i64>,
        shift: HalfPiShift,
        scale: TauScale,
    },
    Pochhammer(PochhammerKind),
    /// Q^e
    QPower(i64),
    /// Σ(−1)ⁿ Q^{n(n−1)/2} zⁿ in one symbol.
    TripleSum {
        slot: usize,
    },
}

impl Factor {
    pub fn theta(j: ThetaIndex, arg: &[i64]) -> Factor {
        Factor::Theta {
            j,
            arg: arg.to_vec(),
            shift: HalfPiShift::NONE,
            scale: TauScale::One,
        }
    }

    pub fn theta_scaled(j: ThetaIndex, arg: &[i64], scale: TauScale) -> Factor {
        Factor::Theta {
            j,
            arg: arg.to_vec(),
            shift: HalfPiShift::NONE,
            scale,
        }
    }

    /// ϑ_j at the (scaled) parameter; `nvars` zeros as argument.
    pub fn null(j: ThetaIndex, nvars: usize, scale: TauScale) -> Factor {
        Self::theta_scaled(j, &vec![0; nvars], scale)
    }

    fn expand(&self, symbols: &AngleSymbols, order: i64) -> Result<QSeries> {
        match self {
            Factor::Theta { j, arg, shift, scale } => theta_qseries(*j, symbols, arg, *shift, *scale, order),
            Factor::Pochhammer(kind) => pochhammer_qseries(kind, symbols, order),
            Factor::QPower(e) => Ok(QSeries::monomial(
                symbols.clone(),
                order,
                *e,
                vec![0; symbols.len()],
                GaussianRational::one(),
            )),
            Factor::TripleSum { slot } => triple_sum_qseries(symbols, *slot, order),
        }
    }
}

/// coeff · Π factors
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: GaussianRational,
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn new(coeff: i64, factors: Vec<Factor>) -> Self {
        Term {
            coeff: GaussianRational::from_int(coeff),
            factors,
        }
    }

    fn expand(&self, symbols: &AngleSymbols, order: i64) -> Result<QSeries> {
        let mut acc = QSeries::constant(symbols.clone(), order, self.coeff.clone());
        for f in &self.factors {
            acc = acc.mul(&f.expand(symbols, order)?)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Σ lhs = Σ rhs as formal series, optionally with symbols pinned to
/// multiples of π/4 after expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactIdentity {
    pub name: String,
    pub symbols: AngleSymbols,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    /// (symbol slot, multiple of π/4)
    pub specialize: Vec<(usize, i64)>,
}

/// A single deliberate corruption, used to show that a check can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    FlipSign {
        side: Side,
        term: usize,
    },
    ReplaceTheta {
        side: Side,
        term: usize,
        factor: usize,
        j: ThetaIndex,
    },
}

impl ExactIdentity {
    fn mutated(&self, m: &Mutation) -> Result<ExactIdentity> {
        let mut out = self.clone();
        let (side, term) = match m {
            Mutation::FlipSign { side, term } | Mutation::ReplaceTheta { side, term, .. } => (*side, *term),
        };
        let terms = match side {
            Side::Lhs => &mut out.lhs,
            Side::Rhs => &mut out.rhs,
        };
        let t = terms
            .get_mut(term)
            .ok_or_else(|| Error::Domain(format!("mutation refers to missing term {term}")))?;
        match m {
            Mutation::FlipSign { .. } => t.coeff = -t.coeff.clone(),
            Mutation::ReplaceTheta { factor, j, .. } => match t.factors.get_mut(*factor) {
                Some(Factor::Theta { j: old, .. }) => *old = *j,
                _ => return Err(Error::Domain(format!("factor {factor} is not a theta factor"))),
            },
        }
        Ok(out)
    }

    fn side_series(&self, terms: &[Term], order: i64) -> Result<QSeries> {
        let mut acc = QSeries::zero(self.symbols.clone(), order);
        for t in terms {
            acc = acc.add(&t.expand(&self.symbols, order)?)?;
        }
        self.apply_specializations(acc)
    }

    fn apply_specializations(&self, mut s: QSeries) -> Result<QSeries> {
        for &(slot, eighths) in &self.specialize {
            s = s.specialize_eighths(slot, eighths)?;
        }
        Ok(s)
    }

    /// Both sides expanded to Q^order.
    pub fn sides(&self, order: i64) -> Result<(QSeries, QSeries)> {
        Ok((self.side_series(&self.lhs, order)?, self.side_series(&self.rhs, order)?))
    }
}

/// Location and value of the first coefficient where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub q_exp: i64,
    pub monomial: String,
    pub exponents: Vec<i64>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactReport {
    pub name: String,
    pub order: i64,
    pub passed: bool,
    /// Nonzero coefficients on the left-hand side, so a vacuous 0 = 0 is visible.
    pub support: usize,
    pub witness: Option<Witness>,
}

/// Expands both sides to `order` and compares them exactly.
pub fn verify(identity: &ExactIdentity, order: i64, mutation: Option<&Mutation>) -> Result<ExactReport> {
    let mutated;
    let identity = match mutation {
        Some(m) => {
            mutated = identity.mutated(m)?;
            &mutated
        }
        None => identity,
    };
    let (lhs, rhs) = identity.sides(order)?;
    let diff = lhs.sub(&rhs)?;
    let support = if identity.rhs.is_empty() {
        lhs.support().max(term_support(identity, order)?)
    } else {
        lhs.support()
    };
    let witness = diff.first_nonzero().map(|(e, m, c)| Witness {
        check: identity.name.clone(),
        q_exp: e,
        monomial: format_monomial(&identity.symbols, m),
        exponents: m.clone(),
        value: c.to_string(),
    });
    Ok(ExactReport {
        name: identity.name.clone(),
        order,
        passed: witness.is_none(),
        support,
        witness,
    })
}

/// For "sum = 0" identities the total vanishes, so report the first term's support instead.
fn term_support(identity: &ExactIdentity, order: i64) -> Result<usize> {
    match identity.lhs.first() {
        Some(t) => Ok(identity
            .apply_specializations(t.expand(&identity.symbols, order)?)?
            .support()),
        None => Ok(0),
    }
}

fn symbols(names: &[&str]) -> AngleSymbols {
    AngleSymbols::new(names.iter().copied()).expect("static symbol table")
}

use ThetaIndex as J;

/// Three-term vanishing sum of products of four θ₁ values.
pub fn riemann_identity() -> ExactIdentity {
    // symbols u, u1, u2, u3
    let t1 = |a: [i64; 4]| Factor::theta(J::ONE, &a);
    let lhs = vec![
        Term::new(
            1,
            vec![t1([1, 1, 0, 0]), t1([1, -1, 0, 0]), t1([0, 0, 1, 1]), t1([0, 0, 1, -1])],
        ),
        Term::new(
            1,
            vec![t1([1, 0, 1, 0]), t1([1, 0, -1, 0]), t1([0, 1, 0, 1]), t1([0, -1, 0, 1])],
        ),
        Term::new(
            1,
            vec![t1([1, 0, 0, 1]), t1([1, 0, 0, -1]), t1([0, 1, 1, 0]), t1([0, 1, -1, 0])],
        ),
    ];
    ExactIdentity {
        name: "riemann_L".into(),
        symbols: symbols(&["u", "u1", "u2", "u3"]),
        lhs,
        rhs: vec![],
        specialize: vec![],
    }
}

/// ϑ_k θ_k(x−y) θ₁(a+b+x+y) θ₁(a−b) = θ₁(a+x)θ₁(a+y)θ_k(b+x)θ_k(b+y) − θ_k(a+x)θ_k(a+y)θ₁(b+x)θ₁(b+y)
/// over symbols (a, b, x, y), for k = 2, 3, 4.
fn four_theta_identity(name: &str, k: ThetaIndex) -> ExactIdentity {
    let f = |j: ThetaIndex, a: [i64; 4]| Factor::theta(j, &a);
    let (ax, ay, bx, by) = ([1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]);
    ExactIdentity {
        name: name.into(),
        symbols: symbols(&["a", "b", "x", "y"]),
        lhs: vec![Term::new(
            1,
            vec![
                Factor::null(k, 4, TauScale::One),
                f(k, [0, 0, 1, -1]),
                f(J::ONE, [1, 1, 1, 1]),
                f(J::ONE, [1, -1, 0, 0]),
            ],
        )],
        rhs: vec![
            Term::new(1, vec![f(J::ONE, ax), f(J::ONE, ay), f(k, bx), f(k, by)]),
            Term::new(-1, vec![f(k, ax), f(k, ay), f(J::ONE, bx), f(J::ONE, by)]),
        ],
        specialize: vec![],
    }
}

pub fn prop_t3_identity() -> ExactIdentity {
    four_theta_identity("t3", J::THREE)
}

pub fn prop_t2_identity() -> ExactIdentity {
    four_theta_identity("t2", J::TWO)
}

/// The θ₄ analogue, which underlies the ssn_q theorem.
pub fn prop_t4_identity() -> ExactIdentity {
    four_theta_identity("t4", J::FOUR)
}

/// 2θ₂(z|2τ)θ₃(z|2τ) = ϑ₂(τ)θ₂(z|τ)
pub fn doubling_product_identity() -> ExactIdentity {
    ExactIdentity {
        name: "doubling (theta)".into(),
        symbols: symbols(&["z"]),
        lhs: vec![Term::new(
            2,
            vec![
                Factor::theta_scaled(J::TWO, &[1], TauScale::Two),
                Factor::theta_scaled(J::THREE, &[1], TauScale::Two),
            ],
        )],
        rhs: vec![Term::new(
            1,
            vec![Factor::null(J::TWO, 1, TauScale::One), Factor::theta(J::TWO, &[1])],
        )],
        specialize: vec![],
    }
}

/// ϑ₂(τ)² = 2ϑ₂(2τ)ϑ₃(2τ)
pub fn doubling_null_identity() -> ExactIdentity {
    ExactIdentity {
        name: "doubling (null)".into(),
        symbols: symbols(&["z"]),
        lhs: vec![Term::new(
            1,
            vec![
                Factor::null(J::TWO, 1, TauScale::One),
                Factor::null(J::TWO, 1, TauScale::One),
            ],
        )],
        rhs: vec![Term::new(
            2,
            vec![
                Factor::null(J::TWO, 1, TauScale::Two),
                Factor::null(J::THREE, 1, TauScale::Two),
            ],
        )],
        specialize: vec![],
    }
}

/// θ₁(π/4|τ)² = 2 q^{1/2} (q²;q²)²_∞ (−q⁴;q⁴)²_∞
pub fn quarter_pi_squared_identity() -> ExactIdentity {
    ExactIdentity {
        name: "quarter_pi_squared".into(),
        symbols: symbols(&["z"]),
        lhs: vec![Term::new(
            1,
            vec![Factor::theta(J::ONE, &[1]), Factor::theta(J::ONE, &[1])],
        )],
        rhs: vec![Term::new(
            2,
            vec![
                Factor::QPower(2),
                Factor::Pochhammer(PochhammerKind::q2_q2()),
                Factor::Pochhammer(PochhammerKind::q2_q2()),
                Factor::Pochhammer(PochhammerKind::neg_q4_q4()),
                Factor::Pochhammer(PochhammerKind::neg_q4_q4()),
            ],
        )],
        specialize: vec![(0, 1)],
    }
}

/// Σ(−1)ⁿ p^{n(n−1)/2} zⁿ = (p;p)_∞ (z;p)_∞ (p/z;p)_∞, with the grid variable
/// standing for the nome p itself.
pub fn triple_product_identity() -> ExactIdentity {
    let poch = |q_exp, mono: Vec<i64>| {
        Factor::Pochhammer(PochhammerKind {
            negate: false,
            q_exp,
            step: 1,
            mono,
        })
    };
    ExactIdentity {
        name: "triple".into(),
        symbols: symbols(&["z"]),
        lhs: vec![Term::new(1, vec![Factor::TripleSum { slot: 0 }])],
        rhs: vec![Term::new(
            1,
            vec![poch(1, vec![0]), poch(0, vec![1]), poch(1, vec![-1])],
        )],
        specialize: vec![],
    }
}

fn require_min(name: &str, order: i64, min: i64) -> Result<()> {
    if order < min {
        return Err(Error::Domain(format!("{name} needs order >= {min}, got {order}")));
    }
    Ok(())
}

pub fn verify_riemann_l(order: i64) -> Result<ExactReport> {
    require_min("riemann_L", order, 4)?;
    verify(&riemann_identity(), order, None)
}

pub fn verify_prop_t3(order: i64) -> Result<ExactReport> {
    require_min("t3", order, 4)?;
    verify(&prop_t3_identity(), order, None)
}

pub fn verify_prop_t2(order: i64) -> Result<ExactReport> {
    require_min("t2", order, 4)?;
    verify(&prop_t2_identity(), order, None)
}

pub fn verify_prop_t4(order: i64) -> Result<ExactReport> {
    require_min("t4", order, 4)?;
    verify(&prop_t4_identity(), order, None)
}

/// Both doubling relations; the report fails with the first failing part's witness.
pub fn verify_doubling(order: i64) -> Result<ExactReport> {
    verify_doubling_with(order, None, None)
}

/// `mutate_product`/`mutate_null` corrupt one of the two parts.
pub fn verify_doubling_with(
    order: i64,
    mutate_product: Option<&Mutation>,
    mutate_null: Option<&Mutation>,
) -> Result<ExactReport> {
    if order % 2 != 0 {
        return Err(Error::Grid(format!("doubling check needs an even order, got {order}")));
    }
    require_min("doubling", order, 2)?;
    let product = verify(&doubling_product_identity(), order, mutate_product)?;
    let null = verify(&doubling_null_identity(), order, mutate_null)?;
    Ok(ExactReport {
        name: "doubling".into(),
        order,
        passed: product.passed && null.passed,
        support: product.support + null.support,
        witness: product.witness.or(null.witness),
    })
}

pub fn verify_quarter_pi_squared(order: i64) -> Result<ExactReport> {
    require_min("quarter_pi_squared", order, 2)?;
    verify(&quarter_pi_squared_identity(), order, None)
}

pub fn verify_triple_product(order: i64) -> Result<ExactReport> {
    require_min("triple", order, 1)?;
    verify(&triple_product_identity(), order, None)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    // Brute-force oracle: Gaussian-integer coefficients keyed by (Q-exponent, monomial).
    type Brute = HashMap<(i64, Vec<i64>), (i128, i128)>;

    fn gmul(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn bump(m: &mut Brute, key: (i64, Vec<i64>), c: (i128, i128)) {
        let e = m.entry(key).or_insert((0, 0));
        e.0 += c.0;
        e.1 += c.1;
    }

    fn brute_theta(j: u8, arg: &[i64], scale: i64, order: i64) -> Brute {
        let mut out = Brute::new();
        for k in -40i64..=40 {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            let (e, n, c) = match j {
                1 => (4 * k * (k + 1) + 1, 2 * k + 1, (0, -sign)),
                2 => (4 * k * (k + 1) + 1, 2 * k + 1, (1, 0)),
                3 => (4 * k * k, 2 * k, (1, 0)),
                _ => (4 * k * k, 2 * k, (sign, 0)),
            };
            let e = e * scale;
            if e <= order {
                bump(&mut out, (e, arg.iter().map(|a| a * n).collect()), c);
            }
        }
        out
    }

    fn brute_mul(a: &Brute, b: &Brute, order: i64) -> Brute {
        let mut out = Brute::new();
        for ((ea, ma), ca) in a {
            for ((eb, mb), cb) in b {
                if ea + eb <= order {
                    let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                    bump(&mut out, (ea + eb, m), gmul(*ca, *cb));
                }
            }
        }
        out
    }

    fn brute_product(factors: &[Brute], coeff: i128, order: i64, nvars: usize) -> Brute {
        let mut acc = Brute::from([((0, vec![0; nvars]), (coeff, 0))]);
        for f in factors {
            acc = brute_mul(&acc, f, order);
        }
        acc
    }

    fn brute_sub(a: &mut Brute, b: &Brute) {
        for (k, c) in b {
            bump(a, k.clone(), (-c.0, -c.1));
        }
    }

    fn nonzero(m: &Brute) -> Vec<(i64, Vec<i64>)> {
        let mut v: Vec<_> = m
            .iter()
            .filter(|(_, c)| **c != (0, 0))
            .map(|(k, _)| k.clone())
            .collect();
        v.sort();
        v
    }

    fn to_brute(s: &QSeries) -> Brute {
        let mut out = Brute::new();
        for (e, poly) in s.coeffs() {
            for (m, c) in poly.terms() {
                let re = {
                    assert!(c.re().is_integer());
                    c.re().numer().to_i128().unwrap()
                };
                let im = {
                    assert!(c.im().is_integer());
                    c.im().numer().to_i128().unwrap()
                };
                out.insert((e, m.clone()), (re, im));
            }
        }
        out
    }

    fn same(a: &Brute, b: &Brute) -> bool {
        let mut d = a.clone();
        brute_sub(&mut d, b);
        nonzero(&d).is_empty()
    }

    #[test]
    fn theta_expansion_matches_brute_force() {
        let syms = AngleSymbols::new(["a", "b"]).unwrap();
        for j in ThetaIndex::ALL {
            for scale in [TauScale::One, TauScale::Two] {
                let s = theta_qseries(j, &syms, &[2, -1], HalfPiShift::NONE, scale, 30).unwrap();
                let k = if scale == TauScale::Two { 2 } else { 1 };
                assert!(
                    same(&to_brute(&s), &brute_theta(j.get(), &[2, -1], k, 30)),
                    "θ{}",
                    j.get()
                );
            }
        }
    }

    #[test]
    fn riemann_brute_force_vanishes_and_matches() {
        let order = 12;
        let t = |a: [i64; 4]| brute_theta(1, &a, 1, order);
        let mut sum = brute_product(
            &[t([1, 1, 0, 0]), t([1, -1, 0, 0]), t([0, 0, 1, 1]), t([0, 0, 1, -1])],
            1,
            order,
            4,
        );
        for term in [
            brute_product(
                &[t([1, 0, 1, 0]), t([1, 0, -1, 0]), t([0, 1, 0, 1]), t([0, -1, 0, 1])],
                1,
                order,
                4,
            ),
            brute_product(
                &[t([1, 0, 0, 1]), t([1, 0, 0, -1]), t([0, 1, 1, 0]), t([0, 1, -1, 0])],
                1,
                order,
                4,
            ),
        ] {
            for (k, c) in term {
                bump(&mut sum, k, c);
            }
        }
        assert!(nonzero(&sum).is_empty());
        let r = verify_riemann_l(order).unwrap();
        assert!(r.passed && r.support > 0, "{r:?}");
        assert!(verify_riemann_l(4).unwrap().passed);
    }

    fn brute_four_theta(k: u8, order: i64) -> (Brute, Brute) {
        let f = |j: u8, a: [i64; 4]| brute_theta(j, &a, 1, order);
        let (ax, ay, bx, by) = ([1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]);
        let lhs = brute_product(
            &[
                f(k, [0; 4]),
                f(k, [0, 0, 1, -1]),
                f(1, [1, 1, 1, 1]),
                f(1, [1, -1, 0, 0]),
            ],
            1,
            order,
            4,
        );
        let mut rhs = brute_product(&[f(1, ax), f(1, ay), f(k, bx), f(k, by)], 1, order, 4);
        brute_sub(
            &mut rhs,
            &brute_product(&[f(k, ax), f(k, ay), f(1, bx), f(1, by)], 1, order, 4),
        );
        (lhs, rhs)
    }

    #[test]
    fn four_theta_propositions_against_oracle() {
        for (k, ident) in [
            (3, prop_t3_identity()),
            (2, prop_t2_identity()),
            (4, prop_t4_identity()),
        ] {
            let (bl, br) = brute_four_theta(k, 12);
            assert!(same(&bl, &br), "oracle t{k}");
            let (l, r) = ident.sides(12).unwrap();
            assert!(same(&to_brute(&l), &bl) && same(&to_brute(&r), &br), "engine t{k}");
        }
        assert!(verify_prop_t3(20).unwrap().passed);
        assert!(verify_prop_t2(20).unwrap().passed);
        assert!(verify_prop_t4(16).unwrap().passed);
    }

    #[test]
    fn mutations_produce_witnesses() {
        let flip = Mutation::FlipSign {
            side: Side::Lhs,
            term: 2,
        };
        let r = verify(&riemann_identity(), 12, Some(&flip)).unwrap();
        assert!(!r.passed);
        let w = r.witness.unwrap();
        let (l, _) = riemann_identity().sides(12).unwrap();
        // flipping term 3 leaves 2·(term 3); its lowest exponent is 4
        assert_eq!(w.q_exp, 4);
        assert!(l.is_zero());

        let swap = Mutation::ReplaceTheta {
            side: Side::Lhs,
            term: 0,
            factor: 0,
            j: ThetaIndex::TWO,
        };
        assert!(!verify(&prop_t3_identity(), 12, Some(&swap)).unwrap().passed);
        let swap2 = Mutation::ReplaceTheta {
            side: Side::Lhs,
            term: 0,
            factor: 0,
            j: ThetaIndex::THREE,
        };
        assert!(!verify(&prop_t2_identity(), 12, Some(&swap2)).unwrap().passed);

        let bad = Mutation::ReplaceTheta {
            side: Side::Rhs,
            term: 0,
            factor: 0,
            j: ThetaIndex::ONE,
        };
        assert!(verify(&triple_product_identity(), 5, Some(&bad)).is_err());
    }

    #[test]
    fn witness_is_lowest_exponent_then_smallest_monomial() {
        let flip = Mutation::FlipSign {
            side: Side::Rhs,
            term: 1,
        };
        let r = verify(&prop_t3_identity(), 12, Some(&flip)).unwrap();
        let w = r.witness.unwrap();
        // the difference is 2·(second term); compare against its own first coefficient
        let second = prop_t3_identity().rhs[1]
            .expand(&prop_t3_identity().symbols, 12)
            .unwrap();
        let (e2, m2, _) = second.first_nonzero().unwrap();
        assert_eq!((w.q_exp, &w.exponents), (e2, m2));
    }

    #[test]
    fn doubling_checks() {
        assert!(verify_doubling(16).unwrap().passed);
        assert!(verify_doubling(40).unwrap().passed);
        assert!(matches!(verify_doubling(15), Err(Error::Grid(_))));
        let (l, r) = doubling_null_identity().sides(4).unwrap();
        for s in [&l, &r] {
            assert_eq!(s.min_exp(), Some(2));
            assert_eq!(s.coeff(2).unwrap().coeff(&[0]), GaussianRational::from_int(4));
        }
        // oracle for the product form
        let lhs = brute_product(&[brute_theta(2, &[1], 2, 16), brute_theta(3, &[1], 2, 16)], 2, 16, 1);
        let rhs = brute_product(&[brute_theta(2, &[0], 1, 16), brute_theta(2, &[1], 1, 16)], 1, 16, 1);
        assert!(same(&lhs, &rhs));
        let m = Mutation::FlipSign {
            side: Side::Rhs,
            term: 0,
        };
        assert!(!verify_doubling_with(16, None, Some(&m)).unwrap().passed);
    }

    fn poly_mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
        let mut out = vec![0; n + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= n {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    #[test]
    fn quarter_pi_squared_against_oracle() {
        let n = 30usize;
        // θ₁(π/4)² directly: (−i)² Σ_{k,m} (−1)^{k+m} Q^{…} i^{(2k+1)/2 + (2m+1)/2}
        let mut direct = vec![(0i128, 0i128); n + 1];
        for k in -10i64..=10 {
            for m in -10i64..=10 {
                let e = 4 * k * (k + 1) + 1 + 4 * m * (m + 1) + 1;
                if e as usize > n || e < 0 {
                    continue;
                }
                let sign = if (k + m).rem_euclid(2) == 0 { -1 } else { 1 };
                let c = match (k + m + 1).rem_euclid(4) {
                    0 => (1, 0),
                    1 => (0, 1),
                    2 => (-1, 0),
                    _ => (0, -1),
                };
                direct[e as usize].0 += sign * c.0;
                direct[e as usize].1 += sign * c.1;
            }
        }
        let mut prod = vec![0i128; n + 1];
        prod[2] = 2;
        for step in (8..=n).step_by(8) {
            let mut f = vec![0i128; step + 1];
            f[0] = 1;
            f[step] = -1;
            prod = poly_mul(&prod, &f, n);
            prod = poly_mul(&prod, &f, n);
        }
        for step in (16..=n).step_by(16) {
            let mut f = vec![0i128; step + 1];
            f[0] = 1;
            f[step] = 1;
            prod = poly_mul(&prod, &f, n);
            prod = poly_mul(&prod, &f, n);
        }
        for (e, (d, p)) in direct.iter().zip(&prod).enumerate().take(n + 1) {
            assert_eq!(*d, (*p, 0), "Q^{e}");
        }
        let (l, _) = quarter_pi_squared_identity().sides(n as i64).unwrap();
        for (e, p) in prod.iter().enumerate().take(n + 1) {
            let c = l
                .coeff(e as i64)
                .map(|poly| poly.coeff(&[0]))
                .unwrap_or_else(GaussianRational::zero);
            assert_eq!(c, GaussianRational::from_int(*p as i64));
        }
        assert_eq!(l.min_exp(), Some(2));
        assert!(verify_quarter_pi_squared(10).unwrap().passed);
        assert!(verify_quarter_pi_squared(80).unwrap().passed);
    }

    #[test]
    fn triple_product_checks() {
        assert!(verify_triple_product(10).unwrap().passed);
        assert!(verify_triple_product(25).unwrap().passed);
        // z⁰ collects to 1: only n = 0 contributes on the sum side
        let (l, r) = triple_product_identity().sides(5).unwrap();
        for s in [&l, &r] {
            for e in 0..=5 {
                let c = s.coeff(e).map(|p| p.coeff(&[0])).unwrap_or_else(GaussianRational::zero);
                let want = if e == 0 { 1 } else { 0 };
                assert_eq!(c, GaussianRational::from_int(want), "nome^{e}");
            }
        }
        // (nome;nome) alone gives the pentagonal pattern 1 − p − p² + p⁵ + p⁷ …
        let syms = AngleSymbols::new(["z"]).unwrap();
        let kind = PochhammerKind {
            negate: false,
            q_exp: 1,
            step: 1,
            mono: vec![0],
        };
        let euler = pochhammer_qseries(&kind, &syms, 12).unwrap();
        let want = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)];
        assert_eq!(euler.support(), want.len());
        for (e, c) in want {
            assert_eq!(euler.coeff(e).unwrap().coeff(&[0]), GaussianRational::from_int(c));
        }
    }

    #[test]
    fn truncation_coherence() {
        for ident in [
            prop_t2_identity(),
            quarter_pi_squared_identity(),
            triple_product_identity(),
        ] {
            let (a, _) = ident.sides(10).unwrap();
            let (b, _) = ident.sides(16).unwrap();
            assert_eq!(b.truncate(10), a, "{}", ident.name);
        }
    }

    #[test]
    fn order_floor_enforced() {
        assert!(verify_riemann_l(3).is_err());
        assert!(verify_quarter_pi_squared(1).is_err());
        assert!(verify_triple_product(0).is_err());
    }

    #[test]
    fn report_serializes() {
        let r = verify(
            &riemann_identity(),
            8,
            Some(&Mutation::FlipSign {
                side: Side::Lhs,
                term: 0,
            }),
        )
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: ExactReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
