use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Identity,
    Vars,
    Where,
    Lhs,
    Rhs,
    Tags,
    Pi,
    Tau,
}

impl Keyword {
    const ALL: [(&'static str, Keyword); 8] = [
        ("identity", Keyword::Identity),
        ("vars", Keyword::Vars),
        ("where", Keyword::Where),
        ("lhs", Keyword::Lhs),
        ("rhs", Keyword::Rhs),
        ("tags", Keyword::Tags),
        ("pi", Keyword::Pi),
        ("tau", Keyword::Tau),
    ];

    pub fn from_word(w: &str) -> Option<Keyword> {
        Self::ALL.iter().find(|(s, _)| *s == w).map(|(_, k)| *k)
    }

    pub fn as_str(self) -> &'static str {
        Self::ALL.iter().find(|(_, k)| *k == self).map(|(s, _)| *s).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int(Integer),
    Rational(Rational),
    Str(String),
    Kw(Keyword),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    pub fn punct(c: char) -> Option<Tok> {
        Some(match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            _ => return None,
        })
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |c: &str| format!("`{c}`");
        let s = match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Rational(r) => format!("rational {r}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Kw(k) => format!("keyword `{}`", k.as_str()),
            Tok::Plus => p("+"),
            Tok::Minus => p("-"),
            Tok::Star => p("*"),
            Tok::Slash => p("/"),
            Tok::Caret => p("^"),
            Tok::LParen => p("("),
            Tok::RParen => p(")"),
            Tok::LBrace => p("{"),
            Tok::RBrace => p("}"),
            Tok::LBracket => p("["),
            Tok::RBracket => p("]"),
            Tok::Colon => p(":"),
            Tok::Comma => p(","),
            Tok::Semi => p(";"),
            Tok::Eq => p("="),
            Tok::Eof => "end of input".into(),
        };
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    text: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.offset..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.text[self.offset..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.column,
            offset: self.offset,
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.offset;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        &self.text[start..self.offset]
    }
}

/// Splits `.qid` source into tokens, ending with `Eof`.
///
/// `p/q` with no whitespace is a single rational literal.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        text,
        offset: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        cur.take_while(char::is_whitespace);
        if cur.peek() == Some('#') {
            cur.take_while(|c| c != '\n');
            continue;
        }
        let span = cur.span();
        let Some(c) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, span });
            return Ok(out);
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let word = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            match Keyword::from_word(word) {
                Some(k) => Tok::Kw(k),
                None => Tok::Ident(word.to_string()),
            }
        } else if c.is_ascii_digit() {
            let num: Integer = cur.take_while(|c| c.is_ascii_digit()).parse().unwrap();
            if cur.peek() == Some('/') && cur.peek2().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
                let den_span = cur.span();
                let den: Integer = cur.take_while(|c| c.is_ascii_digit()).parse().unwrap();
                if den == 0 {
                    return Err(Error::Lex {
                        span: den_span,
                        message: "zero denominator".into(),
                    });
                }
                Tok::Rational(Rational::from((num, den)))
            } else {
                Tok::Int(num)
            }
        } else if c == '"' {
            cur.bump();
            let body = cur.take_while(|c| c != '"' && c != '\n').to_string();
            if cur.bump() != Some('"') {
                return Err(Error::Lex {
                    span,
                    message: "unterminated string".into(),
                });
            }
            Tok::Str(body)
        } else if let Some(t) = Tok::punct(c) {
            cur.bump();
            t
        } else {
            return Err(Error::Lex {
                span,
                message: format!("illegal character {c:?}"),
            });
        };
        out.push(Token { tok, span });
    }
}
