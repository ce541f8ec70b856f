use std::collections::BTreeSet;
use std::fmt;
use std::ops;

use rug::Rational;

use crate::error::SourceSpan;
use crate::theta::ThetaIndex;

/// Source position attached to AST nodes. Never takes part in equality,
/// so a reparsed tree compares equal to the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos(pub SourceSpan);

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sinq,
    Cosq,
    Ccsq,
    Ssnq,
    Sin,
    Cos,
    Theta(ThetaIndex),
    ThetaNull(ThetaIndex),
    Piq,
    /// qpow[m](w) = q^{m·w}
    Qpow,
    /// qpoch[m](a) = (a; q^m)_∞
    Qpoch,
    /// expi(w) = e^{iw}
    Expi,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        let f = match name {
            "sinq" => Func::Sinq,
            "cosq" => Func::Cosq,
            "ccsq" => Func::Ccsq,
            "ssnq" => Func::Ssnq,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "piq" => Func::Piq,
            "qpow" => Func::Qpow,
            "qpoch" => Func::Qpoch,
            "expi" => Func::Expi,
            _ => {
                let (rest, null) = match name.strip_prefix("thetanull") {
                    Some(r) => (r, true),
                    None => (name.strip_prefix("theta")?, false),
                };
                let j = match rest {
                    "1" => ThetaIndex::ONE,
                    "2" => ThetaIndex::TWO,
                    "3" => ThetaIndex::THREE,
                    "4" => ThetaIndex::FOUR,
                    _ => return None,
                };
                if null { Func::ThetaNull(j) } else { Func::Theta(j) }
            }
        };
        Some(f)
    }

    pub fn name(self) -> String {
        match self {
            Func::Sinq => "sinq".into(),
            Func::Cosq => "cosq".into(),
            Func::Ccsq => "ccsq".into(),
            Func::Ssnq => "ssnq".into(),
            Func::Sin => "sin".into(),
            Func::Cos => "cos".into(),
            Func::Theta(j) => format!("theta{}", j.get()),
            Func::ThetaNull(j) => format!("thetanull{}", j.get()),
            Func::Piq => "piq".into(),
            Func::Qpow => "qpow".into(),
            Func::Qpoch => "qpoch".into(),
            Func::Expi => "expi".into(),
        }
    }

    /// False for the constants ϑ_j and Π_q.
    pub fn takes_arg(self) -> bool {
        !matches!(self, Func::ThetaNull(_) | Func::Piq)
    }

    pub fn takes_tau(self) -> bool {
        matches!(self, Func::Theta(_) | Func::ThetaNull(_))
    }

    pub fn takes_base(self) -> bool {
        !matches!(self, Func::Sin | Func::Cos | Func::Expi)
    }

    /// True if the value depends on q at all.
    pub fn is_q_dependent(self) -> bool {
        !matches!(self, Func::Sin | Func::Cos | Func::Expi)
    }
}

/// Parameter a theta call is taken at, applied after the base exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TauSel {
    #[default]
    Tau,
    Double,
    Half,
    /// −1/τ
    S,
}

impl fmt::Display for TauSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TauSel::Tau => "tau",
            TauSel::Double => "2*tau",
            TauSel::Half => "tau/2",
            TauSel::S => "-1/tau",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub func: Func,
    pub base_exp: u32,
    pub arg: Option<Box<Expr>>,
    pub tau: TauSel,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Nonzero integer power.
    Pow(Box<Expr>, i32),
    Call(Call),
    Var(String, Pos),
    Pi,
    Tau,
    /// Nonnegative literal; negative numbers are `Neg`.
    Rational(Rational),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string(), Pos::default())
    }

    pub fn int(n: u32) -> Expr {
        Expr::Rational(Rational::from(n))
    }

    pub fn ratio(num: u32, den: u32) -> Expr {
        Expr::Rational(Rational::from((num, den)))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Self::call_full(func, 1, Some(arg), TauSel::Tau)
    }

    pub fn call_full(func: Func, base_exp: u32, arg: Option<Expr>, tau: TauSel) -> Expr {
        Expr::Call(Call {
            func,
            base_exp,
            arg: arg.map(Box::new),
            tau,
            pos: Pos::default(),
        })
    }

    pub fn pow(self, k: i32) -> Expr {
        assert!(k != 0, "zero power");
        Expr::Pow(Box::new(self), k)
    }

    /// Visits every node, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.walk(f),
            Expr::Call(c) => {
                if let Some(a) = &c.arg {
                    a.walk(f);
                }
            }
            Expr::Var(..) | Expr::Pi | Expr::Tau | Expr::Rational(_) => {}
        }
    }

    /// Variables in order of first appearance, with their positions.
    pub fn vars(&self) -> Vec<(&str, Pos)> {
        let mut out: Vec<(&str, Pos)> = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Var(name, pos) = e
                && !out.iter().any(|(n, _)| n == name)
            {
                out.push((name, *pos));
            }
        });
        out
    }

    pub fn uses_q(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| match e {
            Expr::Call(c) if c.func.is_q_dependent() => found = true,
            Expr::Tau => found = true,
            _ => {}
        });
        found
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityDecl {
    pub name: String,
    pub vars: Vec<String>,
    /// Derived variables, each referring only to free vars and earlier bindings.
    pub bindings: Vec<(String, Expr)>,
    pub lhs: Expr,
    pub rhs: Expr,
    pub tags: BTreeSet<String>,
    pub pos: Pos,
}

impl IdentityDecl {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    /// True if neither side nor any binding depends on q.
    pub fn is_classical(&self) -> bool {
        !self.lhs.uses_q() && !self.rhs.uses_q() && !self.bindings.iter().any(|(_, e)| e.uses_q())
    }
}
