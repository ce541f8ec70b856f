//! The built-in identity corpus, built directly as syntax trees.
//!
//! `corpus/builtin.qid` is the same corpus as text; a test keeps the two in step.

use std::collections::BTreeSet;

use super::ast::{Expr, Func, IdentityDecl, Pos, TauSel};
use super::parser::parse;
use crate::error::Result;
use crate::theta::ThetaIndex;

pub const BUILTIN_QID: &str = include_str!("../../corpus/builtin.qid");
pub const ERRATA_QID: &str = include_str!("../../corpus/errata.qid");

fn v(name: &str) -> Expr {
    Expr::var(name)
}

fn n(k: u32) -> Expr {
    Expr::int(k)
}

fn pi() -> Expr {
    Expr::Pi
}

fn f1(func: Func) -> impl Fn(Expr) -> Expr {
    move |e| Expr::call(func, e)
}

fn fm(func: Func, m: u32) -> impl Fn(Expr) -> Expr {
    move |e| Expr::call_full(func, m, Some(e), TauSel::Tau)
}

fn theta(j: u8) -> impl Fn(Expr) -> Expr {
    f1(Func::Theta(ThetaIndex::new(j).unwrap()))
}

fn theta_at(j: u8, m: u32, sel: TauSel) -> impl Fn(Expr) -> Expr {
    move |e| Expr::call_full(Func::Theta(ThetaIndex::new(j).unwrap()), m, Some(e), sel)
}

fn null(j: u8, m: u32, sel: TauSel) -> Expr {
    Expr::call_full(Func::ThetaNull(ThetaIndex::new(j).unwrap()), m, None, sel)
}

fn decl(name: &str, vars: &[&str], bindings: Vec<(&str, Expr)>, lhs: Expr, rhs: Expr, tags: &[&str]) -> IdentityDecl {
    IdentityDecl {
        name: name.into(),
        vars: vars.iter().map(|s| s.to_string()).collect(),
        bindings: bindings.into_iter().map(|(k, e)| (k.to_string(), e)).collect(),
        lhs,
        rhs,
        tags: tags.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>(),
        pos: Pos::default(),
    }
}

const ABXY: &[&str] = &["a", "b", "x", "y"];
const ABG: &[&str] = &["alpha", "beta", "gamma"];

fn delta() -> Vec<(&'static str, Expr)> {
    vec![("delta", pi() - v("alpha") - v("beta") - v("gamma"))]
}

/// f(p+x) f(p+y) g(q+x) g(q+y); `xa` puts x first in each sum.
fn pair_prod(f: &dyn Fn(Expr) -> Expr, p: &str, g: &dyn Fn(Expr) -> Expr, q: &str, xa: bool) -> Expr {
    let s = |p: &str, q: &str| if xa { v(q) + v(p) } else { v(p) + v(q) };
    f(s(p, "x")) * f(s(p, "y")) * g(s(q, "x")) * g(s(q, "y"))
}

/// f(·+a)² g(·+b)² − h(·+a)² k(·+b)², the right side shared by the four-variable family.
fn four_term(
    f: &dyn Fn(Expr) -> Expr,
    g: &dyn Fn(Expr) -> Expr,
    h: &dyn Fn(Expr) -> Expr,
    k: &dyn Fn(Expr) -> Expr,
    xa: bool,
) -> Expr {
    pair_prod(f, "a", g, "b", xa) - pair_prod(h, "a", k, "b", xa)
}

fn abxy_sum() -> Expr {
    v("a") + v("b") + v("x") + v("y")
}

fn xyab_sum() -> Expr {
    v("x") + v("y") + v("a") + v("b")
}

pub fn builtin_corpus() -> Vec<IdentityDecl> {
    let sinq = f1(Func::Sinq);
    let cosq = f1(Func::Cosq);
    let ccsq = f1(Func::Ccsq);
    let ssnq = f1(Func::Ssnq);
    let sin = f1(Func::Sin);
    let cos = f1(Func::Cos);
    let qpow = f1(Func::Qpow);
    let expi = f1(Func::Expi);
    let qpoch = |m: u32, e: Expr| Expr::call_full(Func::Qpoch, m, Some(e), TauSel::Tau);
    let piq = |m: u32| Expr::call_full(Func::Piq, m, None, TauSel::Tau);
    let (x, y) = (|| v("x"), || v("y"));
    let (a, b) = (|| v("a"), || v("b"));
    let s = TauSel::S;

    let mut out = vec![
        decl(
            "gosper_1_15",
            ABXY,
            vec![],
            sinq(abxy_sum()) * ccsq(x() - y()) * sinq(a() - b()),
            pair_prod(&sinq, "a", &ccsq, "b", false) - pair_prod(&sinq, "b", &ccsq, "a", false),
            &["theorem"],
        ),
        decl(
            "thm_7_2",
            ABXY,
            vec![],
            cosq(x() - y()) * sinq(xyab_sum()) * sinq(a() - b()),
            four_term(&sinq, &cosq, &cosq, &sinq, true),
            &["theorem"],
        ),
        decl(
            "thm_7_5",
            ABXY,
            vec![],
            ssnq(n(0)) * ssnq(x() - y()) * sinq(xyab_sum()) * sinq(a() - b()),
            four_term(&sinq, &ssnq, &ssnq, &sinq, true),
            &["theorem", "corrected"],
        ),
        decl(
            "rel_1_3",
            &["x"],
            vec![],
            sinq(x()),
            theta_at(1, 1, s)(x()) / null(2, 1, s),
            &["relation", "dual_form"],
        ),
        decl(
            "rel_1_20",
            &["x"],
            vec![],
            cosq(x()),
            theta_at(2, 1, s)(x()) / null(2, 1, s),
            &["relation", "dual_form"],
        ),
        decl(
            "rel_2_8",
            &["x"],
            vec![],
            fm(Func::Cosq, 2)(x()) / cosq(x()),
            theta_at(3, 1, s)(x()) / null(3, 1, s),
            &["relation", "dual_form"],
        ),
        decl(
            "rel_7_4",
            &["x"],
            vec![],
            fm(Func::Sinq, 2)(x()) / sinq(x()),
            theta_at(4, 1, s)(x()) / null(3, 1, s),
            &["relation", "dual_form"],
        ),
        decl(
            "rel_cos_q2",
            &["x"],
            vec![],
            fm(Func::Cosq, 2)(x()),
            theta_at(2, 2, s)(x()) / null(2, 2, s),
            &["relation", "dual_form"],
        ),
        decl(
            "rel_10_1",
            &["x"],
            vec![],
            theta(1)(x() + pi() / n(2)),
            theta(2)(x()),
            &["relation", "theta"],
        ),
        decl(
            "rel_10_2",
            &["x"],
            vec![],
            theta(1)(x() + (pi() + pi() * Expr::Tau) / n(2)),
            qpow(-Expr::ratio(1, 4)) * expi(-x()) * theta(3)(x()),
            &["relation", "theta"],
        ),
        decl(
            "rel_6_4",
            &["x"],
            vec![],
            n(2) * theta_at(2, 1, TauSel::Double)(x()) * theta_at(3, 1, TauSel::Double)(x()),
            null(2, 1, TauSel::Tau) * theta(2)(x()),
            &["relation", "theta"],
        ),
        decl(
            "rel_6_5",
            &[],
            vec![],
            null(2, 1, TauSel::Tau).pow(2),
            n(2) * null(2, 1, TauSel::Double) * null(3, 1, TauSel::Double),
            &["relation", "theta"],
        ),
        decl(
            "rel_4_1",
            &[],
            vec![],
            theta(1)(pi() / n(4)).pow(2),
            n(2) * qpow(Expr::ratio(1, 2)) * qpoch(2, qpow(n(2))).pow(2) * qpoch(4, -qpow(n(4))).pow(2),
            &["relation", "theta"],
        ),
        decl(
            "triple_product",
            &["x"],
            vec![],
            theta(4)(x()),
            qpoch(2, qpow(n(2))) * qpoch(2, qpow(n(1)) * expi(n(2) * x())) * qpoch(2, qpow(n(1)) * expi(-n(2) * x())),
            &["relation", "theta"],
        ),
        decl(
            "jacobi_product_1",
            &["x"],
            vec![],
            theta(1)(x()),
            n(2) * qpow(Expr::ratio(1, 4))
                * sin(x())
                * qpoch(2, qpow(n(2)))
                * qpoch(2, qpow(n(2)) * expi(n(2) * x()))
                * qpoch(2, qpow(n(2)) * expi(-n(2) * x())),
            &["relation", "theta"],
        ),
        decl(
            "jacobi_product_2",
            &["x"],
            vec![],
            theta(2)(x()),
            n(2) * qpow(Expr::ratio(1, 4))
                * cos(x())
                * qpoch(2, qpow(n(2)))
                * qpoch(2, -qpow(n(2)) * expi(n(2) * x()))
                * qpoch(2, -qpow(n(2)) * expi(-n(2) * x())),
            &["relation", "theta"],
        ),
        decl(
            "jacobi_product_3",
            &["x"],
            vec![],
            theta(3)(x()),
            qpoch(2, qpow(n(2))) * qpoch(2, -qpow(n(1)) * expi(n(2) * x())) * qpoch(2, -qpow(n(1)) * expi(-n(2) * x())),
            &["relation", "theta"],
        ),
        decl(
            "q_double_2",
            &["x"],
            vec![],
            sinq(n(2) * x()),
            piq(1) / piq(2) * fm(Func::Sinq, 2)(x()) * fm(Func::Cosq, 2)(x()),
            &["known"],
        ),
        decl(
            "q_double_3",
            &["x"],
            vec![],
            cosq(n(2) * x()),
            fm(Func::Cosq, 2)(x()).pow(2) - fm(Func::Sinq, 2)(x()).pow(2),
            &["known"],
        ),
    ];

    type Arg = fn() -> Expr;
    let abo = |hi: u32, lo: u32, p: Arg, q: Arg| {
        fm(Func::Sinq, hi)(p()) / fm(Func::Sinq, lo)(p()) * cosq(q()).pow(2)
            + fm(Func::Cosq, hi)(p()) / fm(Func::Cosq, lo)(p()) * sinq(q()).pow(2)
    };
    let (xf, yf): (Arg, Arg) = (|| v("x"), || v("y"));
    out.push(decl(
        "abo_touk_q4",
        &["x", "y"],
        vec![],
        abo(4, 2, xf, yf),
        abo(4, 2, yf, xf),
        &["known"],
    ));
    out.push(decl(
        "abo_touk_q3",
        &["x", "y"],
        vec![],
        abo(3, 1, xf, yf),
        abo(3, 1, yf, xf),
        &["known"],
    ));

    let (al, be, ga, de) = (|| v("alpha"), || v("beta"), || v("gamma"), || v("delta"));
    let ptolemy = |g: &dyn Fn(Expr) -> Expr, factor: Option<Expr>| {
        let lhs = sinq(al() + be()) * sinq(be() + ga()) * g(al()) * g(ga());
        let first = sinq(al()) * sinq(ga()) * g(al() + be()) * g(be() + ga());
        let last = match factor {
            Some(c) => c * sinq(be()) * sinq(de()) * g(al() - ga()),
            None => sinq(be()) * sinq(de()) * g(al() - ga()),
        };
        (lhs, first + last)
    };
    let (l, r) = ptolemy(&ccsq, None);
    out.push(decl("ptolemy_ccs", ABG, delta(), l, r, &["proposition", "constrained"]));
    let (l, r) = ptolemy(&ssnq, Some(ssnq(n(0))));
    out.push(decl(
        "ptolemy_ssn",
        ABG,
        delta(),
        l,
        r,
        &["proposition", "constrained", "corrected"],
    ));

    out.extend([
        decl(
            "cons_7_6",
            ABXY,
            vec![],
            sinq(abxy_sum()) * ccsq(x() - y()) * sinq(a() - b()),
            cosq(b() + x()) * cosq(b() + y()) * ssnq(a() + x()) * ssnq(a() + y())
                - cosq(a() + x()) * cosq(a() + y()) * ssnq(b() + x()) * ssnq(b() + y()),
            &["consequence"],
        ),
        decl(
            "cons_7_6_cos",
            ABXY,
            vec![],
            cosq(abxy_sum()) * ccsq(x() - y()) * cosq(a() - b()),
            cosq(a() + x()) * cosq(a() + y()) * ccsq(b() + x()) * ccsq(b() + y())
                - sinq(b() + x()) * sinq(b() + y()) * ssnq(a() + x()) * ssnq(a() + y()),
            &["consequence"],
        ),
        decl(
            "cons_7_3",
            ABXY,
            vec![],
            cosq(x() - y()) * cosq(xyab_sum()) * cosq(a() - b()),
            four_term(&cosq, &cosq, &sinq, &sinq, true),
            &["consequence"],
        ),
        decl(
            "cons_ssn_sin",
            ABXY,
            vec![],
            ssnq(n(0)) * ssnq(x() - y()) * sinq(xyab_sum()) * sinq(a() - b()),
            four_term(&ccsq, &cosq, &cosq, &ccsq, true),
            &["consequence", "corrected"],
        ),
        decl(
            "cons_ssn_cos",
            ABXY,
            vec![],
            ssnq(n(0)) * ssnq(x() - y()) * cosq(xyab_sum()) * cosq(a() - b()),
            four_term(&cosq, &ssnq, &ccsq, &sinq, true),
            &["consequence", "corrected"],
        ),
        decl(
            "prod_sin_diff",
            &["x", "y"],
            vec![],
            sinq(x() + y()) * sinq(x() - y()),
            sinq(x()).pow(2) * cosq(y()).pow(2) - cosq(x()).pow(2) * sinq(y()).pow(2),
            &["consequence"],
        ),
        decl(
            "prod_cos_diff",
            &["x", "y"],
            vec![],
            cosq(x() + y()) * cosq(x() - y()),
            cosq(x()).pow(2) * cosq(y()).pow(2) - sinq(x()).pow(2) * sinq(y()).pow(2),
            &["consequence"],
        ),
        decl(
            "classical_ptolemy",
            ABG,
            delta(),
            sin(al() + be()) * sin(be() + ga()),
            sin(al()) * sin(ga()) + sin(be()) * sin(de()),
            &["limit-q1", "constrained"],
        ),
        decl(
            "classical_sum_diff",
            ABXY,
            vec![],
            sin(abxy_sum()) * sin(a() - b()),
            sin(a() + x()) * sin(a() + y()) - sin(b() + x()) * sin(b() + y()),
            &["limit-q1"],
        ),
        decl(
            "classical_sum_diff_cos",
            ABXY,
            vec![],
            sin(abxy_sum()) * sin(a() - b()),
            cos(b() + x()) * cos(b() + y()) - cos(a() + x()) * cos(a() + y()),
            &["limit-q1"],
        ),
    ]);

    let t1 = theta(1);
    let u = |s: &str| v(s);
    let quad =
        |p: &str, q: &str, r: &str, s: &str| t1(u(p) + u(q)) * t1(u(p) - u(q)) * t1(u(r) + u(s)) * t1(u(r) - u(s));
    out.push(decl(
        "riemann_L",
        &["u", "u1", "u2", "u3"],
        vec![],
        quad("u", "u1", "u2", "u3") + quad("u", "u2", "u3", "u1") + quad("u", "u3", "u1", "u2"),
        n(0),
        &["theta", "proposition"],
    ));
    let tk = |k: u8| move |e: Expr| theta(k)(e);
    out.push(decl(
        "prop_t3_1",
        ABXY,
        vec![],
        null(3, 1, TauSel::Tau) * theta(3)(x() - y()) * t1(abxy_sum()) * t1(a() - b()),
        pair_prod(&t1, "a", &tk(3), "b", false) - pair_prod(&t1, "b", &tk(3), "a", false),
        &["theta", "proposition"],
    ));
    for (name, k) in [("prop_t2_1", 2), ("prop_t4_1", 4)] {
        out.push(decl(
            name,
            ABXY,
            vec![],
            null(k, 1, TauSel::Tau) * theta(k)(x() - y()) * t1(xyab_sum()) * t1(a() - b()),
            four_term(&t1, &tk(k), &tk(k), &t1, true),
            &["theta", "proposition"],
        ));
    }

    out.extend([
        decl(
            "ccs_shift",
            &["x"],
            vec![],
            ccsq(x() + pi() / n(2)),
            ssnq(x()),
            &["relation"],
        ),
        decl(
            "ssn_shift",
            &["x"],
            vec![],
            ssnq(x() + pi() / n(2)),
            ccsq(x()),
            &["relation"],
        ),
        decl(
            "cos_sin_shift",
            &["x"],
            vec![],
            cosq(x()),
            sinq(pi() / n(2) + x()),
            &["relation"],
        ),
        decl(
            "cos_sin_reflect",
            &["x"],
            vec![],
            cosq(x()),
            sinq(pi() / n(2) - x()),
            &["relation"],
        ),
    ]);
    out
}

/// The misprinted forms, each expected to fail.
pub fn errata_corpus() -> Vec<IdentityDecl> {
    parse(ERRATA_QID).expect("errata corpus parses")
}

/// Built-ins followed by the declarations of each user file, in order.
pub fn load_corpus(texts: &[String]) -> Result<Vec<IdentityDecl>> {
    let mut out = builtin_corpus();
    for t in texts {
        out.extend(parse(t)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::pretty::pretty_file;
    use super::*;

    #[test]
    fn shipped_text_matches_builders() {
        let parsed = parse(BUILTIN_QID).unwrap();
        let built = builtin_corpus();
        assert_eq!(parsed.len(), built.len());
        for (p, b) in parsed.iter().zip(&built) {
            assert_eq!(p, b, "{}", b.name);
        }
    }

    #[test]
    fn required_entries() {
        let c = builtin_corpus();
        assert!(c.len() >= 24);
        for name in [
            "gosper_1_15",
            "thm_7_2",
            "thm_7_5",
            "rel_1_3",
            "rel_1_20",
            "rel_2_8",
            "rel_7_4",
            "rel_10_1",
            "rel_10_2",
            "rel_6_4",
            "rel_6_5",
            "rel_4_1",
            "triple_product",
            "q_double_2",
            "q_double_3",
            "abo_touk_q4",
            "abo_touk_q3",
            "ptolemy_ccs",
            "ptolemy_ssn",
            "cons_7_6",
            "cons_7_6_cos",
            "cons_7_3",
            "cons_ssn_sin",
            "cons_ssn_cos",
            "prod_sin_diff",
            "prod_cos_diff",
            "classical_ptolemy",
            "classical_sum_diff",
        ] {
            assert!(c.iter().any(|d| d.name == name), "{name}");
        }
        let g = c.iter().find(|d| d.name == "gosper_1_15").unwrap();
        assert_eq!(g.vars, ["a", "b", "x", "y"]);
        let p = c.iter().find(|d| d.name == "ptolemy_ccs").unwrap();
        assert_eq!(p.bindings[0].0, "delta");
    }

    #[test]
    fn limit_entries_are_classical() {
        for d in builtin_corpus().iter().filter(|d| d.has_tag("limit-q1")) {
            assert!(d.is_classical(), "{}", d.name);
        }
    }

    #[test]
    fn pretty_print_is_idempotent() {
        for text in [BUILTIN_QID, ERRATA_QID] {
            let decls = parse(text).unwrap();
            let once = pretty_file(&decls);
            let again = parse(&once).unwrap();
            assert_eq!(again, decls);
            assert_eq!(pretty_file(&again), once);
        }
    }

    #[test]
    fn user_files_append() {
        let extra = r#"identity "mine" { vars: x; lhs: sin(x)^2 + cos(x)^2; rhs: 1; }"#.to_string();
        let all = load_corpus(&[extra]).unwrap();
        assert_eq!(all.len(), builtin_corpus().len() + 1);
        assert_eq!(load_corpus(&[]).unwrap(), builtin_corpus());
        assert_eq!(errata_corpus().len(), 5);
    }
}
