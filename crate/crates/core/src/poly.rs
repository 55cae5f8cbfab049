//! Sparse univariate polynomials over Q, the coordinate ring of the affine line.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ops::forward_ring_ops;
use crate::rational::{lcm_of_denominators, power_str, write_sum, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `x - a`
    pub fn linear(a: &Rational) -> Self {
        Self::from_terms([(1, Rational::one()), (0, -a)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients listed from degree 0 upwards.
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .cloned()
                .enumerate()
                .map(|(e, c)| (e as u32, c)),
        )
    }

    pub(crate) fn add_term(&mut self, e: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent present; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Ascending `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
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

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * Rational::from_integer(BigInt::from(*e)))),
        )
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=deg).rev() {
            acc *= at;
            if let Some(c) = self.coeffs.get(&e) {
                acc += c;
            }
        }
        acc
    }

    /// `self(q(x))`
    pub fn compose(&self, q: &Self) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut acc = Self::zero();
        for e in (0..=deg).rev() {
            acc = &acc * q;
            if let Some(c) = self.coeffs.get(&e) {
                acc.add_term(0, c.clone());
            }
        }
        acc
    }

    /// `self(x + a)`. With `a` the centre of `u = x - a`, this rewrites a
    /// polynomial in `x` as the same function expanded in powers of `u`.
    pub fn shift(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        self.compose(&Self::from_terms([(1, Rational::one()), (0, a.clone())]))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading_coeff();
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let t = Self::monomial(rem.leading_coeff() / &lc, rd - dd);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        (quot, rem)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Digits of the `q`-adic expansion `self = sum_k d_k q^k`, `deg d_k < deg q`.
    pub fn q_adic_digits(&self, q: &Self) -> Vec<Self> {
        assert!(!q.is_constant(), "q-adic expansion needs a non-constant q");
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quot, rem) = rest.div_rem(q);
            digits.push(rem);
            rest = quot;
        }
        digits
    }

    /// Integer coefficients of a positive rational multiple of `self`, listed
    /// from degree 0 upwards.
    pub(crate) fn integer_coeffs(&self) -> Vec<BigInt> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let l = lcm_of_denominators(self.coeffs.values());
        let mut out: Vec<BigInt> = (0..=deg)
            .map(|e| (self.coeff(e) * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut out {
                *c /= &g;
            }
        }
        out
    }

    /// Rational roots with multiplicities (ascending) and the monic cofactor
    /// that has no rational root.
    pub fn rational_roots(&self) -> (Vec<(Rational, u32)>, Self) {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let mut roots = Vec::new();
        let mut rest = self.monic();
        let v = rest.valuation().unwrap_or(0);
        if v > 0 {
            roots.push((Rational::zero(), v));
            rest = Self {
                coeffs: rest
                    .coeffs
                    .iter()
                    .map(|(e, c)| (e - v, c.clone()))
                    .collect(),
            };
        }
        if !rest.is_constant() {
            let ints = rest.integer_coeffs();
            let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
            let mut candidates = Vec::new();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    let c = Rational::new(p.clone(), q);
                    candidates.push(-c.clone());
                    candidates.push(c);
                }
            }
            candidates.sort();
            candidates.dedup();
            for c in candidates {
                if rest.is_constant() {
                    break;
                }
                let lin = Self::linear(&c);
                let mut mult = 0;
                loop {
                    let (q, r) = rest.div_rem(&lin);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((c, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest.monic())
    }
}

/// Positive divisors by trial division; inputs are desk-scale coefficients.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(m) = n.to_u128() {
        let mut d: u128 = 1;
        while d * d <= m {
            if m % d == 0 {
                small.push(BigInt::from(d));
                if d * d != m {
                    large.push(BigInt::from(m / d));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                small.push(d.clone());
                if &d * &d != n {
                    large.push(&n / &d);
                }
            }
            d += 1;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

forward_ring_ops!(Poly);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.coeffs
                .iter()
                .rev()
                .map(|(e, c)| (c, power_str("x", *e).unwrap_or_default())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(c: &[i64]) -> Poly {
        Poly::from_dense(&c.iter().map(|v| int(*v)).collect::<Vec<_>>())
    }

    #[test]
    fn degree_of_zero_is_undefined() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn no_stored_zeros() {
        let a = p(&[1, 2]);
        let b = p(&[-1, -2]);
        assert!((&a + &b).is_zero());
        assert_eq!((&a + &b).terms().count(), 0);
    }

    #[test]
    fn shift_and_compose() {
        // (x+1)^2 = x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).shift(&int(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[0, 1]).compose(&p(&[0, 0, 1])), p(&[0, 0, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), Poly::one());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 3x^2 - 2x = x(3x - 2)
        let (roots, rest) = p(&[0, -2, 3]).rational_roots();
        assert_eq!(roots, vec![(int(0), 1), (frac(2, 3), 1)]);
        assert!(rest.is_constant());
        // (x-1)^3 (x^2+1)
        let q = &p(&[-1, 1]).pow(3) * &p(&[1, 0, 1]);
        let (roots, rest) = q.rational_roots();
        assert_eq!(roots, vec![(int(1), 3)]);
        assert_eq!(rest, p(&[1, 0, 1]));
    }

    #[test]
    fn q_adic() {
        let q = p(&[0, 1, 1]); // x^2 + x
        let f = &(&q.pow(2) * &int_poly(3)) + &int_poly(1);
        let digits = f.q_adic_digits(&q);
        assert_eq!(digits, vec![int_poly(1), Poly::zero(), int_poly(3)]);
    }

    fn int_poly(c: i64) -> Poly {
        Poly::constant(int(c))
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "x^2 - 2 x + 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::monomial(frac(-1, 2), 3).to_string(), "-1/2 x^3");
    }
}
