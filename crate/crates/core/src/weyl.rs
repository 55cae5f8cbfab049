//! The first Weyl algebra `Q<x, d>` with `d x - x d = 1`, stored in the
//! normal form `sum c_ij x^i d^j` (functions to the left).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ops::forward_ring_ops;
use crate::poly::Poly;
use crate::rational::{falling_factorial, power_str, write_sum, Rational};
use crate::symbol::GradedPoly;

/// Order of an operator with respect to the order filtration. The zero
/// operator has order `NegInfinity`, below every finite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    NegInfinity,
    Finite(u32),
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::NegInfinity => None,
            Order::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInfinity => f.write_str("-inf"),
            Order::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of D(A^1). Terms are keyed by `(i, j)` for `x^i d^j` and
/// iterate in ascending lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylOp {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl WeylOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn d() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `c x^i d^j`
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn from_poly(f: &Poly) -> Self {
        Self::from_terms(f.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    /// `sum_j c_j(x) d^j` from its coefficient polynomials.
    pub fn from_coeff_polys(coeffs: &[Poly]) -> Self {
        let mut out = Self::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (i, v) in c.terms() {
                out.add_term((i, j as u32), v.clone());
            }
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `((i, j), c)` for each stored `c x^i d^j`, ascending in `(i, j)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn order(&self) -> Order {
        self.terms
            .keys()
            .map(|&(_, j)| j)
            .max()
            .map_or(Order::NegInfinity, Order::Finite)
    }

    /// Largest x-exponent; `None` for zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(i, _)| i)
    }

    /// The coefficient polynomial `c_j(x)` of `d^j`.
    pub fn coeff_poly(&self, j: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((_, jj), _)| *jj == j)
                .map(|((i, _), c)| (*i, c.clone())),
        )
    }

    /// `Some(f)` when the operator is a function (order <= 0).
    pub fn as_poly(&self) -> Option<Poly> {
        match self.order() {
            Order::NegInfinity => Some(Poly::zero()),
            Order::Finite(0) => Some(self.coeff_poly(0)),
            _ => None,
        }
    }

    pub fn symbol(&self) -> GradedPoly {
        match self.order() {
            Order::NegInfinity => GradedPoly::zero(),
            Order::Finite(d) => GradedPoly::from_terms(
                self.terms
                    .iter()
                    .filter(|((_, j), _)| *j == d)
                    .map(|(k, c)| (*k, c.clone())),
            ),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Normal-form product, using
    /// `d^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) d^(b-k)`.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &other.terms {
                let base = ca * cb;
                // C(b,k) * c!/(c-k)!, built incrementally
                let mut w = BigInt::one();
                for k in 0..=b.min(c) {
                    if k > 0 {
                        w = w * BigInt::from(b - k + 1) * BigInt::from(c - k + 1) / BigInt::from(k);
                    }
                    out.add_term(
                        (a + c - k, b - k + d),
                        &base * Rational::from_integer(w.clone()),
                    );
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Action on `Q[x]`: `x^i d^j (x^k) = k!/(k-j)! x^(i+k-j)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(i, j), c) in &self.terms {
            for (k, v) in f.terms() {
                if j > k {
                    continue;
                }
                let w = Rational::from_integer(falling_factorial(k, j));
                out.add_term(i + k - j, c * v * w);
            }
        }
        out
    }

    /// The same operator written in the coordinate `u = x - a` (and printed
    /// with `x` standing for `u`): substitutes `x -> x + a`, leaving `d` fixed.
    pub fn recenter(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let max_j = self.order().finite().unwrap_or(0);
        let coeffs: Vec<Poly> = (0..=max_j).map(|j| self.coeff_poly(j).shift(a)).collect();
        Self::from_coeff_polys(&coeffs)
    }
}

/// k-fold iterated commutator `[f, [f, ... [f, op] ... ]]`.
pub fn ad_power(f: &Poly, op: &WeylOp, k: u32) -> WeylOp {
    let f = WeylOp::from_poly(f);
    let mut acc = op.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = f.commutator(&acc);
    }
    acc
}

forward_ring_ops!(WeylOp);

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        // printed by descending order, then descending x-degree
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 .1, k.0 .0)));
        write_sum(
            f,
            keys.into_iter().map(|(&(i, j), c)| {
                let parts: Vec<String> = [power_str("x", i), power_str("d", j)]
                    .into_iter()
                    .flatten()
                    .collect();
                (c, parts.join(" "))
            }),
        )
    }
}
