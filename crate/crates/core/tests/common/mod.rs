//! Random AST generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use qtheta::dsl::{Expr, Func, IdentityDecl, Pos, TauSel};
use qtheta::theta::ThetaIndex;
use rug::Rational;

pub const VARS: [&str; 4] = ["a", "b", "x", "y"];

fn theta_index() -> impl Strategy<Value = ThetaIndex> {
    (1u8..5).prop_map(|j| ThetaIndex::new(j).unwrap())
}

fn func() -> impl Strategy<Value = Func> {
    prop_oneof![
        Just(Func::Sinq),
        Just(Func::Cosq),
        Just(Func::Ccsq),
        Just(Func::Ssnq),
        Just(Func::Sin),
        Just(Func::Cos),
        theta_index().prop_map(Func::Theta),
        theta_index().prop_map(Func::ThetaNull),
        Just(Func::Piq),
        Just(Func::Qpow),
        Just(Func::Qpoch),
        Just(Func::Expi),
    ]
}

fn tau_sel() -> impl Strategy<Value = TauSel> {
    prop_oneof![
        Just(TauSel::Tau),
        Just(TauSel::Double),
        Just(TauSel::Half),
        Just(TauSel::S)
    ]
}

fn leaf(names: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop::sample::select(names).prop_map(Expr::var),
        Just(Expr::Pi),
        Just(Expr::Tau),
        (0u32..20).prop_map(Expr::int),
        (1u32..9, 2u32..9).prop_map(|(n, d)| Expr::Rational(Rational::from((n, d)))),
    ]
}

/// Expressions over `names`, with every call shape the grammar allows.
pub fn expr(names: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    leaf(names).prop_recursive(4, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), prop_oneof![-4i32..0, 1i32..5]).prop_map(|(a, k)| a.pow(k)),
            (func(), 1u32..5, inner, tau_sel()).prop_map(|(f, m, a, t)| {
                let m = if f.takes_base() { m } else { 1 };
                let t = if f.takes_tau() { t } else { TauSel::Tau };
                let a = f.takes_arg().then_some(a);
                Expr::call_full(f, m, a, t)
            }),
        ]
    })
}

pub fn decl(name: String) -> impl Strategy<Value = IdentityDecl> {
    let tags = prop::collection::btree_set(
        prop::sample::select(vec!["theorem", "limit-q1", "corrected", "x"]),
        0..3,
    );
    (
        expr(VARS.to_vec()),
        prop::option::of(expr(VARS.to_vec())),
        expr([VARS.as_slice(), &["d"]].concat()),
        expr(VARS.to_vec()),
        tags,
    )
        .prop_map(move |(lhs, binding, rhs_d, rhs, tags)| {
            // `d` is only in scope when the binding exists.
            let rhs = if binding.is_some() { rhs_d } else { rhs };
            let bindings: Vec<(String, Expr)> = binding.map(|e| ("d".to_string(), e)).into_iter().collect();
            IdentityDecl {
                name: name.clone(),
                vars: VARS.iter().map(|s| s.to_string()).collect(),
                bindings,
                lhs,
                rhs,
                tags: tags.into_iter().map(String::from).collect::<BTreeSet<_>>(),
                pos: Pos::default(),
            }
        })
}
