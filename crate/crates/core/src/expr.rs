//! Certificates: expression trees over named generators that re-evaluate to
//! the element they certify.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::symbol::GradedPoly;
use crate::weyl::WeylOp;

/// Ring operations needed to evaluate expressions. Multiplication need not
/// commute.
pub trait Algebra: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn scalar(c: Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn one() -> Self {
        Self::scalar(Rational::one())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

macro_rules! impl_algebra {
    ($t:ty) => {
        impl Algebra for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn scalar(c: Rational) -> Self {
                <$t>::constant_or_scalar(c)
            }
            fn add(&self, other: &Self) -> Self {
                self.add_ref(other)
            }
            fn sub(&self, other: &Self) -> Self {
                self.sub_ref(other)
            }
            fn mul(&self, other: &Self) -> Self {
                self.mul_ref(other)
            }
            fn scale(&self, c: &Rational) -> Self {
                <$t>::scale(self, c)
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn pow(&self, e: u32) -> Self {
                <$t>::pow(self, e)
            }
        }
    };
}

impl Poly {
    fn constant_or_scalar(c: Rational) -> Self {
        Poly::constant(c)
    }
}
impl GradedPoly {
    fn constant_or_scalar(c: Rational) -> Self {
        GradedPoly::constant(c)
    }
}
impl WeylOp {
    fn constant_or_scalar(c: Rational) -> Self {
        WeylOp::scalar(c)
    }
}

impl_algebra!(Poly);
impl_algebra!(GradedPoly);
impl_algebra!(WeylOp);

/// Expression over generator names. Products are ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Rational),
    Gen(String),
    Pow(Box<Expr>, u32),
    Product(Vec<Expr>),
    Scale(Rational, Box<Expr>),
    Sum(Vec<Expr>),
}

impl Expr {
    pub fn gen(name: impl Into<String>) -> Self {
        Expr::Gen(name.into())
    }

    /// Ordered product of generator names with runs of equal names folded
    /// into powers. The empty word is the constant 1.
    pub fn word<S: AsRef<str>>(names: &[S]) -> Self {
        let mut factors: Vec<Expr> = Vec::new();
        let mut k = 0;
        while k < names.len() {
            let name = names[k].as_ref();
            let mut run = 1;
            while k + run < names.len() && names[k + run].as_ref() == name {
                run += 1;
            }
            let g = Expr::gen(name);
            factors.push(if run == 1 {
                g
            } else {
                Expr::Pow(Box::new(g), run as u32)
            });
            k += run;
        }
        match factors.len() {
            0 => Expr::Const(Rational::one()),
            1 => factors.pop().unwrap(),
            _ => Expr::Product(factors),
        }
    }

    /// `c * word`, simplified when `c = 1` or the word is constant.
    pub fn scaled(c: Rational, e: Expr) -> Self {
        match e {
            Expr::Const(v) => Expr::Const(c * v),
            e if c.is_one() => e,
            e => Expr::Scale(c, Box::new(e)),
        }
    }

    pub fn sum(mut terms: Vec<Expr>) -> Self {
        match terms.len() {
            0 => Expr::Const(Rational::zero()),
            1 => terms.pop().unwrap(),
            _ => Expr::Sum(terms),
        }
    }

    pub fn evaluate<A: Algebra>(&self, lookup: &dyn Fn(&str) -> Option<A>) -> Result<A> {
        Ok(match self {
            Expr::Const(c) => A::scalar(c.clone()),
            Expr::Gen(name) => lookup(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?,
            Expr::Pow(base, e) => base.evaluate(lookup)?.pow(*e),
            Expr::Product(fs) => {
                let mut acc = A::one();
                for f in fs {
                    acc = acc.mul(&f.evaluate(lookup)?);
                }
                acc
            }
            Expr::Scale(c, e) => e.evaluate(lookup)?.scale(c),
            Expr::Sum(ts) => {
                let mut acc = A::zero();
                for t in ts {
                    acc = acc.add(&t.evaluate(lookup)?);
                }
                acc
            }
        })
    }

    /// Number of generator occurrences (powers counted with multiplicity).
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Gen(_) => 1,
            Expr::Pow(b, e) => b.size() * *e as usize,
            Expr::Product(fs) | Expr::Sum(fs) => fs.iter().map(Expr::size).sum(),
            Expr::Scale(_, e) => e.size(),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Expr::Gen(_) | Expr::Pow(..))
            || matches!(self, Expr::Const(c) if !c.is_negative() && c.is_integer())
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() || matches!(self, Expr::Product(_)) {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    /// Leading sign and the unsigned remainder, for printing sums.
    fn split_sign(&self) -> (bool, Expr) {
        match self {
            Expr::Const(c) if c.is_negative() => (true, Expr::Const(-c)),
            Expr::Scale(c, e) if c.is_negative() => (true, Expr::scaled(-c, (**e).clone())),
            other => (false, other.clone()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Gen(name) => f.write_str(name),
            Expr::Pow(b, e) => {
                if matches!(**b, Expr::Gen(_)) {
                    write!(f, "{b}^{e}")
                } else {
                    write!(f, "({b})^{e}")
                }
            }
            Expr::Product(fs) => {
                for (k, factor) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    factor.fmt_factor(f)?;
                }
                Ok(())
            }
            Expr::Scale(c, e) => {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                let abs = c.abs();
                if !abs.is_one() {
                    write!(f, "{abs} ")?;
                }
                e.fmt_factor(f)
            }
            Expr::Sum(ts) => {
                for (k, t) in ts.iter().enumerate() {
                    let (neg, body) = t.split_sign();
                    match (k, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    if matches!(body, Expr::Sum(_)) {
                        write!(f, "({body})")?;
                    } else {
                        write!(f, "{body}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A membership witness: `expression` evaluates, over the named generators,
/// exactly to the certified element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub expression: Expr,
}

impl Certificate {
    pub fn new(expression: Expr) -> Self {
        Self { expression }
    }

    pub fn evaluate<A: Algebra>(&self, generators: &[(String, A)]) -> Result<A> {
        self.expression.evaluate(&|name| {
            generators
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone())
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expression.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn word_folds_runs() {
        assert_eq!(Expr::word(&["g2", "g2", "g2"]).to_string(), "g2^3");
        assert_eq!(Expr::word(&["g2", "g1", "g1"]).to_string(), "g2*g1^2");
        assert_eq!(Expr::word::<&str>(&[]).to_string(), "1");
    }

    #[test]
    fn sum_printing() {
        let e = Expr::sum(vec![
            Expr::scaled(frac(1, 4), Expr::word(&["g2", "g1"])),
            Expr::scaled(frac(-1, 4), Expr::word(&["g1", "g2"])),
            Expr::Const(frac(-1, 2)),
        ]);
        assert_eq!(e.to_string(), "1/4 g2*g1 - 1/4 g1*g2 - 1/2");
    }

    #[test]
    fn evaluation_is_ordered() {
        let gens = vec![
            ("g1".to_string(), WeylOp::x().pow(2)),
            ("g2".to_string(), WeylOp::d().pow(2)),
        ];
        let e = Expr::sum(vec![
            Expr::scaled(frac(1, 4), Expr::word(&["g2", "g1"])),
            Expr::scaled(frac(-1, 4), Expr::word(&["g1", "g2"])),
            Expr::Const(frac(-1, 2)),
        ]);
        let v = Certificate::new(e).evaluate(&gens).unwrap();
        assert_eq!(v, WeylOp::monomial(int(1), 1, 1));
        let bad = Certificate::new(Expr::gen("g9"));
        assert_eq!(
            bad.evaluate(&gens),
            Err(Error::UnknownGenerator("g9".into()))
        );
    }
}
