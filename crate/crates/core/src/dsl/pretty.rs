//! Canonical text form. Reparsing the output gives an equal AST.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::{Expr, IdentityDecl, TauSel};
use super::lexer::Keyword;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POSTFIX: u8 = 4;
const ATOM: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Pow(..) => POSTFIX,
        Expr::Rational(r) if *r.denom() != 1 => POSTFIX,
        _ => ATOM,
    }
}

fn write_at(f: &mut Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(f, a, SUM)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_at(f, b, PRODUCT)
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_at(f, a, PRODUCT)?;
            f.write_str(if matches!(e, Expr::Mul(..)) { " * " } else { " / " })?;
            write_at(f, b, UNARY)
        }
        Expr::Neg(a) => {
            f.write_char('-')?;
            write_at(f, a, POSTFIX)
        }
        Expr::Pow(a, k) => {
            write_at(f, a, ATOM)?;
            write!(f, "^{k}")
        }
        Expr::Call(c) => {
            f.write_str(&c.func.name())?;
            if c.base_exp != 1 {
                write!(f, "[{}]", c.base_exp)?;
            }
            f.write_char('(')?;
            if let Some(a) = &c.arg {
                write_expr(f, a)?;
                if c.tau != TauSel::Tau {
                    f.write_str(", ")?;
                }
            }
            if c.tau != TauSel::Tau {
                write!(f, "{}", c.tau)?;
            }
            f.write_char(')')
        }
        Expr::Var(name, _) => f.write_str(name),
        Expr::Pi => f.write_str("pi"),
        Expr::Tau => f.write_str("tau"),
        Expr::Rational(r) => write!(f, "{r}"),
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

fn is_plain_word(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && Keyword::from_word(s).is_none()
}

impl Display for IdentityDecl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity {:?} {{", self.name)?;
        writeln!(f, "  vars: {};", self.vars.join(", "))?;
        if !self.bindings.is_empty() {
            writeln!(f, "  where:")?;
            for (name, e) in &self.bindings {
                writeln!(f, "    {name} = {e};")?;
            }
        }
        writeln!(f, "  lhs: {};", self.lhs)?;
        writeln!(f, "  rhs: {};", self.rhs)?;
        if !self.tags.is_empty() {
            let tags: Vec<String> = self
                .tags
                .iter()
                .map(|t| if is_plain_word(t) { t.clone() } else { format!("{t:?}") })
                .collect();
            writeln!(f, "  tags: {};", tags.join(", "))?;
        }
        f.write_str("}")
    }
}

/// Renders a whole file, one blank line between declarations.
pub fn pretty_file(decls: &[IdentityDecl]) -> String {
    decls.iter().map(|d| format!("{d}\n")).collect::<Vec<_>>().join("\n")
}
