//! Surface syntax for operators, symbols and certificates.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*"? factor)*        juxtaposition multiplies
//! factor := "-" factor | power
//! power  := atom ("^" positive-integer)?
//! atom   := integer ("/" integer)? | identifier | "(" expr ")"
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`/`-`. Identifiers
//! are resolved when the tree is evaluated: `x`, `d` for operators, `x`, `xi`
//! for symbols, generator names for certificates.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::expr::Algebra;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::symbol::GradedPoly;
use crate::weyl::WeylOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    fn new(offset: usize, expected: &[&str], found: impl Into<String>) -> Self {
        Self {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Num(Rational),
    Var { name: String, offset: usize },
    Add(Box<OpExpr>, Box<OpExpr>),
    Sub(Box<OpExpr>, Box<OpExpr>),
    Mul(Box<OpExpr>, Box<OpExpr>),
    Neg(Box<OpExpr>),
    Pow(Box<OpExpr>, u32),
}

impl OpExpr {
    /// Evaluates with `resolve` supplying the value of each identifier;
    /// `known` lists the accepted names for error messages.
    pub fn evaluate<A: Algebra>(
        &self,
        resolve: &dyn Fn(&str) -> Option<A>,
        known: &[&str],
    ) -> Result<A, ParseError> {
        Ok(match self {
            OpExpr::Num(c) => A::scalar(c.clone()),
            OpExpr::Var { name, offset } => {
                resolve(name).ok_or_else(|| ParseError::new(*offset, known, name.clone()))?
            }
            OpExpr::Add(a, b) => a
                .evaluate(resolve, known)?
                .add(&b.evaluate(resolve, known)?),
            OpExpr::Sub(a, b) => a
                .evaluate(resolve, known)?
                .sub(&b.evaluate(resolve, known)?),
            OpExpr::Mul(a, b) => a
                .evaluate(resolve, known)?
                .mul(&b.evaluate(resolve, known)?),
            OpExpr::Neg(a) => a
                .evaluate(resolve, known)?
                .scale(&-Rational::from_integer(1.into())),
            OpExpr::Pow(a, e) => a.evaluate(resolve, known)?.pow(*e),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        let start = k;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((start, Tok::Int(text[start..k].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                    k += 1;
                }
                out.push((start, Tok::Ident(text[start..k].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::new(
                    start,
                    &["number", "identifier", "operator", "parenthesis"],
                    format!("`{ch}`"),
                ));
            }
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::new(self.offset(), expected, self.peek().to_string())
    }

    fn expr(&mut self) -> Result<OpExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = OpExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OpExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OpExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<OpExpr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(OpExpr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) if n > BigInt::from(0) => {
                let e = u32::try_from(&n).map_err(|_| self.error(&["exponent below 2^32"]))?;
                self.bump();
                Ok(OpExpr::Pow(Box::new(base), e))
            }
            _ => Err(self.error(&["positive integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<OpExpr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if d != BigInt::from(0) => {
                            self.bump();
                            Ok(OpExpr::Num(Rational::new(n, d)))
                        }
                        _ => Err(self.error(&["nonzero denominator"])),
                    }
                } else {
                    Ok(OpExpr::Num(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                let offset = self.offset();
                self.bump();
                Ok(OpExpr::Var { name, offset })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&["number", "identifier", "`(`", "`-`"])),
        }
    }
}

/// Parses the grammar above into an unevaluated tree.
pub fn parse_expr(text: &str) -> Result<OpExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

/// Operator in `x`, `d`; the result is the normal form.
pub fn parse_op(text: &str) -> Result<WeylOp, ParseError> {
    parse_expr(text)?.evaluate(
        &|name| match name {
            "x" => Some(WeylOp::x()),
            "d" => Some(WeylOp::d()),
            _ => None,
        },
        &["x", "d"],
    )
}

/// Symbol in `x`, `xi`.
pub fn parse_graded(text: &str) -> Result<GradedPoly, ParseError> {
    parse_expr(text)?.evaluate(
        &|name| match name {
            "x" => Some(GradedPoly::x()),
            "xi" => Some(GradedPoly::xi()),
            _ => None,
        },
        &["x", "xi"],
    )
}

/// Polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse_expr(text)?.evaluate(&|name| (name == "x").then(Poly::x), &["x"])
}
