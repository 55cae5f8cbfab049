//! Ramification of a polynomial map `q: A^1 -> A^1` over its critical values.
//!
//! A root of `q'` of multiplicity `k` is a point of local index `k + 1`; all
//! other points of a fiber are unramified sheets of index 1. Over infinity a
//! polynomial of degree `d` is totally ramified.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Ramified points over one critical value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEntry {
    pub critical_value: Rational,
    /// Local indices `e >= 2` of the critical points in this fiber, ascending.
    pub indices: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub degree: u32,
    /// Ordered by the smallest critical point of each fiber.
    pub entries: Vec<FiberEntry>,
    pub infinity_index: u32,
}

impl RamificationProfile {
    /// Points of index 1 in the fiber, `d - sum e`.
    pub fn unramified_sheets(&self, entry: &FiberEntry) -> u32 {
        self.degree - entry.indices.iter().sum::<u32>()
    }

    /// All local indices of the fiber, unramified sheets included, descending.
    pub fn fiber_indices(&self, entry: &FiberEntry) -> Vec<u32> {
        let mut out: Vec<u32> = entry.indices.iter().rev().copied().collect();
        out.extend(std::iter::repeat_n(
            1,
            self.unramified_sheets(entry) as usize,
        ));
        out
    }
}

pub fn ramification_profile(q: &Poly) -> Result<RamificationProfile> {
    let Some(degree) = q.degree().filter(|&d| d >= 1) else {
        return Err(Error::InvalidArgument(
            "ramification needs a non-constant polynomial".into(),
        ));
    };
    let dq = q.derivative();
    let mut entries: Vec<FiberEntry> = Vec::new();
    if !dq.is_constant() {
        let (roots, cofactor) = dq.rational_roots();
        if !cofactor.is_constant() {
            return Err(Error::UnsupportedFactorization(cofactor));
        }
        for (root, mult) in roots {
            let value = q.eval(&root);
            match entries.iter_mut().find(|e| e.critical_value == value) {
                Some(e) => e.indices.push(mult + 1),
                None => entries.push(FiberEntry {
                    critical_value: value,
                    indices: vec![mult + 1],
                }),
            }
        }
    }
    for e in &mut entries {
        e.indices.sort_unstable();
    }
    Ok(RamificationProfile {
        degree,
        entries,
        infinity_index: degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniformity {
    Uniform,
    /// A fiber whose local indices (unramified sheets included) differ.
    Mixed {
        critical_value: Rational,
        indices: Vec<u32>,
    },
}

impl Uniformity {
    pub fn is_uniform(&self) -> bool {
        matches!(self, Uniformity::Uniform)
    }
}

/// Every ramified fiber has all local indices equal.
pub fn uniform_ramified(q: &Poly) -> Result<Uniformity> {
    let profile = ramification_profile(q)?;
    for entry in &profile.entries {
        let indices = profile.fiber_indices(entry);
        if indices.iter().any(|&e| e != indices[0]) {
            return Ok(Uniformity::Mixed {
                critical_value: entry.critical_value.clone(),
                indices,
            });
        }
    }
    Ok(Uniformity::Uniform)
}

/// Both sides of `-2 = -2d + sum (e - 1) + (d - 1)`.
pub fn hurwitz_sides(q: &Poly) -> Result<(i64, i64)> {
    let profile = ramification_profile(q)?;
    let d = i64::from(profile.degree);
    let finite: i64 = profile
        .entries
        .iter()
        .flat_map(|e| &e.indices)
        .map(|&e| i64::from(e) - 1)
        .sum();
    Ok((-2, -2 * d + finite + i64::from(profile.infinity_index) - 1))
}

pub fn hurwitz_check(q: &Poly) -> Result<bool> {
    let (lhs, rhs) = hurwitz_sides(q)?;
    Ok(lhs == rhs)
}

/// Whether `q = c (x - a)^m + b` for rationals, read off the coefficients.
pub fn is_shifted_pure_power(q: &Poly) -> bool {
    let Some(m) = q.degree() else {
        return false;
    };
    if m <= 1 {
        return true;
    }
    let lc = q.leading_coeff();
    let a = -q.coeff(m - 1) / (&lc * Rational::from_integer(m.into()));
    let candidate = Poly::linear(&a).pow(m).scale(&lc);
    (q - &candidate).is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{frac, int};

    fn poly(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn profiles() {
        let p = ramification_profile(&poly("x^3")).unwrap();
        assert_eq!(p.degree, 3);
        assert_eq!(
            p.entries,
            vec![FiberEntry {
                critical_value: int(0),
                indices: vec![3]
            }]
        );
        let p = ramification_profile(&poly("x^3 - x^2")).unwrap();
        assert_eq!(
            p.entries,
            vec![
                FiberEntry {
                    critical_value: int(0),
                    indices: vec![2]
                },
                FiberEntry {
                    critical_value: frac(-4, 27),
                    indices: vec![2]
                },
            ]
        );
        assert!(ramification_profile(&poly("x")).unwrap().entries.is_empty());
        assert!(matches!(
            ramification_profile(&poly("x^3 - 3 x")),
            Ok(RamificationProfile { .. })
        ));
        assert!(matches!(
            ramification_profile(&poly("x^3 - 6 x")),
            Err(Error::UnsupportedFactorization(_))
        ));
        assert!(ramification_profile(&poly("4")).is_err());
    }

    #[test]
    fn uniformity() {
        assert!(uniform_ramified(&poly("(x - 5)^4")).unwrap().is_uniform());
        assert_eq!(
            uniform_ramified(&poly("x^3 - x^2")).unwrap(),
            Uniformity::Mixed {
                critical_value: int(0),
                indices: vec![2, 1]
            }
        );
        assert!(uniform_ramified(&poly("7 x + 3")).unwrap().is_uniform());
    }

    #[test]
    fn hurwitz() {
        assert_eq!(hurwitz_sides(&poly("x^3")).unwrap(), (-2, -2));
        assert!(hurwitz_check(&poly("x^2")).unwrap());
        assert!(hurwitz_check(&poly("x^3 - x^2")).unwrap());
    }

    #[test]
    fn pure_power_shape() {
        assert!(is_shifted_pure_power(&poly("3 (x + 1/2)^5 - 7")));
        assert!(!is_shifted_pure_power(&poly("x^3 - x^2")));
        assert!(is_shifted_pure_power(&poly("2 x + 1")));
    }
}
