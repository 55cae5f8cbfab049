//! Exact rational scalars and the shared term printer.

use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The coefficient field. Always normalized: lowest terms, positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"-n"` or `"n/d"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `n!/(n-k)!` as an exact integer; zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

pub(crate) fn lcm_of_denominators<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> BigInt {
    coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Writes `c_1 m_1 + c_2 m_2 - ...` where each `m` is an already rendered
/// monomial ("" for the constant monomial). Writes `0` for an empty sum.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (k, (coeff, mono)) in terms.into_iter().enumerate() {
        let negative = coeff.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = coeff.abs();
        if mono.is_empty() {
            write!(out, "{abs}")?;
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            write!(out, "{abs} {mono}")?;
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    f.write_str(&out)
}

pub(crate) fn power_str(var: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        assert_eq!(parse_rational("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_rational("-2/-4"), Some(frac(1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(frac(2, -4).to_string(), "-1/2");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
