//! Coefficient expressions.
//!
//! ```text
//! expr  = term (("+" | "-") term)*
//! term  = unary (("*" | "/") unary)*
//! unary = "-" unary | power
//! power = atom ("^" "-"? integer)?
//! atom  = integer | identifier | "(" expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{RatFun, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprErrorKind {
    Lexical(String),
    UnknownIdentifier(String),
    DivisionByZero,
    Syntax(String),
}

/// Error with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub position: usize,
    pub kind: ExprErrorKind,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprErrorKind::Lexical(s) => write!(f, "unexpected character {s:?} at {}", self.position),
            ExprErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier {s:?} at {}", self.position),
            ExprErrorKind::DivisionByZero => write!(f, "division by zero at {}", self.position),
            ExprErrorKind::Syntax(s) => write!(f, "{s} at {}", self.position),
        }
    }
}

impl std::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|c| c.1).collect()), pos));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), pos));
            i += 1;
        } else if ch == '−' {
            out.push((Tok::Op('-'), pos));
            i += 1;
        } else {
            return Err(ExprError { position: pos, kind: ExprErrorKind::Lexical(ch.to_string()) });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, kind: ExprErrorKind) -> Result<T, ExprError> {
        Err(ExprError { position: self.pos(), kind })
    }

    fn expr(&mut self) -> Result<RatFun, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    let pos = self.pos();
                    self.bump();
                    let d = self.unary()?;
                    match d.recip() {
                        Some(r) => acc = &acc * &r,
                        None => return Err(ExprError { position: pos, kind: ExprErrorKind::DivisionByZero }),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun, ExprError> {
        if self.peek() == &Tok::Op('-') {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun, ExprError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let negative = if self.peek() == &Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        let e: u32 = match self.bump() {
            Tok::Int(v) => match u32::try_from(&v) {
                Ok(e) => e,
                Err(_) => return Err(ExprError { position: pos, kind: ExprErrorKind::Syntax("exponent too large".into()) }),
            },
            _ => return Err(ExprError { position: pos, kind: ExprErrorKind::Syntax("expected an integer exponent".into()) }),
        };
        let p = base.pow(e);
        if negative {
            p.recip().ok_or(ExprError { position: pos, kind: ExprErrorKind::DivisionByZero })
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFun, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(RatFun::constant(Rational::from_integer(v))),
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(RatFun::var(i)),
                None => Err(ExprError { position: pos, kind: ExprErrorKind::UnknownIdentifier(name) }),
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err(ExprErrorKind::Syntax("expected ')'".into()));
                }
                self.bump();
                Ok(v)
            }
            Tok::End => Err(ExprError { position: pos, kind: ExprErrorKind::Syntax("unexpected end of input".into()) }),
            Tok::Op(c) => Err(ExprError { position: pos, kind: ExprErrorKind::Syntax(format!("unexpected {c:?}")) }),
        }
    }
}

/// Parse `text` with identifiers drawn from `names` (variable `i` is `names[i]`).
pub fn parse_expression(text: &str, names: &[String]) -> Result<RatFun, ExprError> {
    let mut p = Parser { toks: lex(text)?, at: 0, names };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err(ExprErrorKind::Syntax("trailing input".into()));
    }
    Ok(v)
}

/// Parse a rational literal such as `"-1/2"`.
pub fn parse_rational(text: &str) -> Result<Rational, ExprError> {
    let v = parse_expression(text, &[])?;
    v.as_constant().ok_or(ExprError { position: 0, kind: ExprErrorKind::Syntax("expected a rational constant".into()) })
}
