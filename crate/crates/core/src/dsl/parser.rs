use std::collections::BTreeSet;

use super::ast::{Call, Expr, Func, IdentityDecl, Pos, TauSel};
use super::lexer::{Keyword, Tok, Token, tokenize};
use crate::error::{Error, Result, SourceSpan};

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.i].span
    }

    fn advance(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if *self.peek() == tok {
            Ok(self.advance())
        } else {
            Err(self.error(&[&tok.to_string()]))
        }
    }

    fn expect_kw(&mut self, k: Keyword) -> Result<()> {
        self.expect(Tok::Kw(k)).map(|_| ())
    }

    fn file(&mut self) -> Result<Vec<IdentityDecl>> {
        let mut out: Vec<IdentityDecl> = Vec::new();
        while *self.peek() != Tok::Eof {
            let span = self.span();
            let decl = self.decl()?;
            if out.iter().any(|d| d.name == decl.name) {
                return Err(Error::Parse {
                    span,
                    expected: vec!["unique identity name".into()],
                    found: format!("duplicate `{}`", decl.name),
                });
            }
            out.push(decl);
        }
        Ok(out)
    }

    fn decl(&mut self) -> Result<IdentityDecl> {
        let pos = Pos(self.span());
        if *self.peek() != Tok::Kw(Keyword::Identity) {
            return Err(self.error(&["`identity`"]));
        }
        self.advance();
        let name = match self.peek().clone() {
            Tok::Str(s) => {
                self.advance();
                s
            }
            _ => return Err(self.error(&["identity name string"])),
        };
        self.expect(Tok::LBrace)?;
        self.expect_kw(Keyword::Vars)?;
        self.expect(Tok::Colon)?;
        let mut scope: Vec<String> = Vec::new();
        let mut vars = Vec::new();
        if *self.peek() != Tok::Semi {
            loop {
                let v = self.new_name(&scope)?;
                scope.push(v.clone());
                vars.push(v);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Semi)?;

        let mut bindings = Vec::new();
        if self.eat(&Tok::Kw(Keyword::Where)) {
            self.expect(Tok::Colon)?;
            while matches!(self.peek(), Tok::Ident(_)) {
                let v = self.new_name(&scope)?;
                self.expect(Tok::Eq)?;
                let e = self.expr()?;
                check_scope(&e, &scope)?;
                self.expect(Tok::Semi)?;
                scope.push(v.clone());
                bindings.push((v, e));
            }
        }

        self.expect_kw(Keyword::Lhs)?;
        self.expect(Tok::Colon)?;
        let lhs = self.expr()?;
        check_scope(&lhs, &scope)?;
        self.expect(Tok::Semi)?;
        self.expect_kw(Keyword::Rhs)?;
        self.expect(Tok::Colon)?;
        let rhs = self.expr()?;
        check_scope(&rhs, &scope)?;
        self.expect(Tok::Semi)?;

        let mut tags = BTreeSet::new();
        if self.eat(&Tok::Kw(Keyword::Tags)) {
            self.expect(Tok::Colon)?;
            while let Tok::Ident(s) | Tok::Str(s) = self.peek().clone() {
                self.advance();
                tags.insert(s);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        Ok(IdentityDecl {
            name,
            vars,
            bindings,
            lhs,
            rhs,
            tags,
            pos,
        })
    }

    fn new_name(&mut self, scope: &[String]) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if Func::from_name(&s).is_none() && !scope.contains(&s) => {
                self.advance();
                Ok(s)
            }
            Tok::Ident(s) if scope.contains(&s) => Err(self.error(&["new variable name"])),
            _ => Err(self.error(&["variable name"])),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                e = e + self.term()?;
            } else if self.eat(&Tok::Minus) {
                e = e - self.term()?;
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                e = e * self.unary()?;
            } else if self.eat(&Tok::Slash) {
                e = e / self.unary()?;
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            Ok(-self.postfix()?)
        } else {
            self.postfix()
        }
    }

    fn postfix(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let negative = self.eat(&Tok::Minus);
        let k = match self.peek() {
            Tok::Int(n) => n.to_i32().filter(|k| *k != 0),
            _ => None,
        };
        let Some(k) = k else {
            return Err(self.error(&["nonzero integer exponent"]));
        };
        self.advance();
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                match Func::from_name(&name) {
                    Some(f) => self.call(f, span),
                    None => Ok(Expr::Var(name, Pos(span))),
                }
            }
            Tok::Kw(Keyword::Pi) => {
                self.advance();
                Ok(Expr::Pi)
            }
            Tok::Kw(Keyword::Tau) => {
                self.advance();
                Ok(Expr::Tau)
            }
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Rational(n.into()))
            }
            Tok::Rational(r) => {
                self.advance();
                Ok(Expr::Rational(r))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.error(&["expression"])),
        }
    }

    fn call(&mut self, func: Func, span: SourceSpan) -> Result<Expr> {
        let mut base_exp = 1;
        if func.takes_base() && self.eat(&Tok::LBracket) {
            base_exp = match self.peek() {
                Tok::Int(n) => n.to_u32().filter(|m| *m >= 1),
                _ => None,
            }
            .ok_or_else(|| self.error(&["positive base exponent"]))?;
            self.advance();
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::LParen)?;
        let arg = if func.takes_arg() {
            Some(Box::new(self.expr()?))
        } else {
            None
        };
        let mut tau = TauSel::Tau;
        if func.takes_tau() {
            let want_sel = if arg.is_some() {
                self.eat(&Tok::Comma)
            } else {
                *self.peek() != Tok::RParen
            };
            if want_sel {
                tau = self.tau_sel()?;
            }
        }
        self.expect(Tok::RParen)?;
        Ok(Expr::Call(Call {
            func,
            base_exp,
            arg,
            tau,
            pos: Pos(span),
        }))
    }

    fn tau_sel(&mut self) -> Result<TauSel> {
        const EXPECTED: &[&str] = &["`tau`", "`2*tau`", "`tau/2`", "`-1/tau`"];
        let two = Tok::Int(2.into());
        let one = Tok::Int(1.into());
        let tau = Tok::Kw(Keyword::Tau);
        let sel = if self.eat(&tau) {
            if self.eat(&Tok::Slash) {
                self.eat(&two).then_some(TauSel::Half)
            } else {
                Some(TauSel::Tau)
            }
        } else if self.eat(&two) {
            (self.eat(&Tok::Star) && self.eat(&tau)).then_some(TauSel::Double)
        } else if self.eat(&Tok::Minus) {
            (self.eat(&one) && self.eat(&Tok::Slash) && self.eat(&tau)).then_some(TauSel::S)
        } else {
            None
        };
        sel.ok_or_else(|| self.error(EXPECTED))
    }
}

fn check_scope(e: &Expr, scope: &[String]) -> Result<()> {
    for (name, pos) in e.vars() {
        if !scope.iter().any(|s| s == name) {
            return Err(Error::At {
                span: pos.0,
                source: Box::new(Error::UnboundVariable(name.to_string())),
            });
        }
    }
    Ok(())
}

/// Parses a `.qid` file.
pub fn parse(text: &str) -> Result<Vec<IdentityDecl>> {
    Parser::new(text)?.file()
}

/// Parses a lone expression, without scope checks.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}
