//! The associated graded ring `Q[x, xi]` of D(A^1), graded by xi-degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ops::forward_ring_ops;
use crate::poly::Poly;
use crate::rational::{power_str, write_sum, Rational};

/// Sparse commutative polynomial keyed by `(x-exponent, xi-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn xi() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `c x^i xi^k`
    pub fn monomial(c: Rational, i: u32, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, k), c);
        }
        Self { terms }
    }

    pub fn from_poly(f: &Poly) -> Self {
        Self::from_terms(f.terms().map(|(e, c)| ((e, 0), c.clone())))
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, k: u32) -> Rational {
        self.terms
            .get(&(i, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// `self` minus its constant term.
    pub fn strip_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&(0, 0));
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn xi_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// Weighted degree of every term, if they all agree.
    pub fn weighted_degree(&self, wx: u32, wxi: u32) -> Option<u32> {
        let mut degs = self.terms.keys().map(|&(i, k)| wx * i + wxi * k);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_xi_homogeneous(&self) -> bool {
        self.weighted_degree(0, 1).is_some()
    }

    /// Component of xi-degree `k` as a polynomial in x.
    pub fn xi_coeff(&self, k: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((_, kk), _)| *kk == k)
                .map(|((i, _), c)| (*i, c.clone())),
        )
    }

    /// Highest-xi-degree component.
    pub fn top_xi_form(&self) -> Self {
        match self.xi_degree() {
            None => Self::zero(),
            Some(k) => Self::from_terms(
                self.terms
                    .iter()
                    .filter(|((_, kk), _)| *kk == k)
                    .map(|(key, c)| (*key, c.clone())),
            ),
        }
    }

    /// Splits into weighted-homogeneous components, keyed by weighted degree.
    pub fn weighted_components(&self, wx: u32, wxi: u32) -> BTreeMap<u32, GradedPoly> {
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (&(i, k), c) in &self.terms {
            out.entry(wx * i + wxi * k)
                .or_default()
                .add_term((i, k), c.clone());
        }
        out
    }

    pub fn eval(&self, x0: &Rational, xi0: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, k), c)| {
                c * num_traits::pow(x0.clone(), i as usize)
                    * num_traits::pow(xi0.clone(), k as usize)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `x = x0`, leaving a polynomial in xi (printed with `x`).
    pub fn at_x(&self, x0: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (&(i, k), c) in &self.terms {
            out.add_term(k, c * num_traits::pow(x0.clone(), i as usize));
        }
        out
    }

    /// Substitutes `xi = xi0`, leaving a polynomial in x.
    pub fn at_xi(&self, xi0: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (&(i, k), c) in &self.terms {
            out.add_term(i, c * num_traits::pow(xi0.clone(), k as usize));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn partial_xi(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, k), _)| *k > 0)
                .map(|(&(i, k), c)| ((i, k - 1), c * Rational::from_integer(k.into()))),
        )
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

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &other.terms {
                out.add_term((a + c, b + d), ca * cb);
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
}

forward_ring_ops!(GradedPoly);

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 .1, k.0 .0)));
        write_sum(
            f,
            keys.into_iter().map(|(&(i, k), c)| {
                let parts: Vec<String> = [power_str("x", i), power_str("xi", k)]
                    .into_iter()
                    .flatten()
                    .collect();
                (c, parts.join(" "))
            }),
        )
    }
}
