//! Twists `d -> d + p(x)` of D(A^1), and the trace from `Q(x)` down to
//! `Q(t)` for the cover `t = (x - a)^m`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::weyl::WeylOp;

/// The 1-form `p(x) dx` measured against the cover `t = (x - a)^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistForm {
    pub p: Poly,
    pub a: Rational,
    pub m: u32,
}

impl TwistForm {
    pub fn new(p: Poly, a: Rational, m: u32) -> Result<Self> {
        check_m(m)?;
        Ok(Self { p, a, m })
    }

    /// No exponent of `u * p`, expanded in `u = x - a`, is divisible by `m`.
    pub fn is_canonical(&self) -> bool {
        is_canonical(&self.p, self.m, &self.a)
    }

    pub fn canonicalize(&self) -> (TwistForm, Poly) {
        let (p, r) = split_canonical(&self.p, self.m, &self.a);
        (
            TwistForm {
                p,
                a: self.a.clone(),
                m: self.m,
            },
            r,
        )
    }
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "cover degree m must be positive".into(),
        ));
    }
    Ok(())
}

/// Applies the automorphism fixing functions with `d -> d + p`.
pub fn twist(op: &WeylOp, p: &Poly) -> WeylOp {
    let Some(order) = op.order().finite() else {
        return WeylOp::zero();
    };
    let eta = &WeylOp::d() + &WeylOp::from_poly(p);
    let mut power = WeylOp::one();
    let mut out = WeylOp::zero();
    for j in 0..=order {
        let c = op.coeff_poly(j);
        if !c.is_zero() {
            out = &out + &(&WeylOp::from_poly(&c) * &power);
        }
        if j < order {
            power = &power * &eta;
        }
    }
    out
}

pub fn untwist(op: &WeylOp, p: &Poly) -> WeylOp {
    twist(op, &-p)
}

/// `m` times the part of `f` (expanded in `u = x - a`) with exponents
/// divisible by `m`, written back in `x`.
pub fn trace_poly(f: &Poly, m: u32, a: &Rational) -> Result<Poly> {
    check_m(m)?;
    let centered = f.shift(a);
    let kept = Poly::from_terms(
        centered
            .terms()
            .filter(|(e, _)| e % m == 0)
            .map(|(e, c)| (e, c * Rational::from_integer(m.into()))),
    );
    Ok(kept.shift(&-a))
}

fn is_canonical(p: &Poly, m: u32, a: &Rational) -> bool {
    p.shift(a).terms().all(|(e, _)| (e + 1) % m != 0)
}

fn split_canonical(p: &Poly, m: u32, a: &Rational) -> (Poly, Poly) {
    let centered = p.shift(a);
    let mut canon = Poly::zero();
    let mut r = Poly::zero();
    let m_q = Rational::from_integer(m.into());
    for (e, c) in centered.terms() {
        if (e + 1) % m == 0 {
            // u^e = u^(m-1) * (u^m)^k
            r.add_term((e + 1) / m - 1, c / &m_q);
        } else {
            canon.add_term(e, c.clone());
        }
    }
    (canon.shift(&-a), r)
}

/// Splits `p = p_canon + m u^(m-1) r(u^m)` with `u p_canon` canonical.
/// `r` is returned as a polynomial in its own variable.
pub fn canonicalize_p(p: &Poly, m: u32, a: &Rational) -> Result<(Poly, Poly)> {
    check_m(m)?;
    Ok(split_canonical(p, m, a))
}

/// Laurent polynomial in a single variable.
type Laurent = BTreeMap<i64, Rational>;

fn laurent_add(l: &mut Laurent, e: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = l.entry(e).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        l.remove(&e);
    }
}

/// Checks `tr(d_L f) = d_K tr(f)` for `L = Q(x) > K = Q(t)`, `t = u^m`.
///
/// The left side lifts `d/dt` to `L` as `(1 / (m u^(m-1))) d/du` and traces
/// the resulting Laurent polynomial in `u`; the right side differentiates the
/// polynomial trace in `t`. The two computations share no code.
pub fn trace_compatible(f: &Poly, m: u32, a: &Rational) -> Result<bool> {
    check_m(m)?;
    let mi = i64::from(m);
    let m_q = Rational::from_integer(m.into());

    let mut lifted = Laurent::new();
    for (e, c) in f.shift(a).terms() {
        if e > 0 {
            let coeff = c * Rational::from_integer(e.into()) / &m_q;
            laurent_add(&mut lifted, i64::from(e) - mi, coeff);
        }
    }
    let mut lhs = Laurent::new();
    for (e, c) in lifted {
        if e.rem_euclid(mi) == 0 {
            laurent_add(&mut lhs, e / mi, c * &m_q);
        }
    }

    let traced = trace_poly(f, m, a)?.shift(a);
    let mut in_t = Poly::zero();
    for (e, c) in traced.terms() {
        debug_assert_eq!(e % m, 0);
        in_t.add_term(e / m, c.clone());
    }
    let mut rhs = Laurent::new();
    for (k, c) in in_t.derivative().terms() {
        laurent_add(&mut rhs, i64::from(k), c.clone());
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_op, parse_poly};
    use crate::rational::{frac, int};

    fn op(s: &str) -> WeylOp {
        parse_op(s).unwrap()
    }

    fn poly(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(&op("x^3"), &poly("x + 5")), op("x^3"));
        assert_eq!(twist(&op("d"), &poly("x^2")), op("d + x^2"));
        let p = poly("x^2 + 3");
        let eta = &WeylOp::d() + &WeylOp::from_poly(&p);
        assert_eq!(twist(&op("d^2"), &p), &eta * &eta);
        let expected = &(&op("d^2") + &(&WeylOp::from_poly(&p.scale(&int(2))) * &op("d")))
            + &WeylOp::from_poly(&(&p.derivative() + &p.pow(2)));
        assert_eq!(twist(&op("d^2"), &p), expected);
    }

    #[test]
    fn untwist_examples() {
        assert_eq!(untwist(&op("d + x^2"), &poly("x^2")), op("d"));
        let p = poly("1 + x");
        assert_eq!(untwist(&twist(&op("x d"), &p), &p), op("x d"));
        assert_eq!(untwist(&op("d^2 + 2 x d + 1 + x^2"), &poly("x")), op("d^2"));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_poly(&poly("x^4"), 2, &int(0)).unwrap(), poly("2 x^4"));
        assert_eq!(trace_poly(&poly("x^3"), 2, &int(0)).unwrap(), Poly::zero());
        assert_eq!(trace_poly(&poly("1"), 3, &int(0)).unwrap(), poly("3"));
        // (x-1)^2 + (x-1) traced over t = (x-1)^2
        assert_eq!(
            trace_poly(&poly("x^2 - x"), 2, &int(1)).unwrap(),
            poly("2 (x - 1)^2")
        );
        assert!(trace_poly(&poly("x"), 0, &int(0)).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            canonicalize_p(&poly("x"), 2, &int(0)).unwrap(),
            (Poly::zero(), Poly::constant(frac(1, 2)))
        );
        assert_eq!(
            canonicalize_p(&poly("x^2"), 2, &int(0)).unwrap(),
            (poly("x^2"), Poly::zero())
        );
        assert_eq!(
            canonicalize_p(&poly("1 + x"), 2, &int(0)).unwrap(),
            (poly("1"), Poly::constant(frac(1, 2)))
        );
        // m = 1 absorbs every p
        assert_eq!(
            canonicalize_p(&poly("x^3 + 2"), 1, &int(4)).unwrap().0,
            Poly::zero()
        );
    }

    #[test]
    fn trace_compatibility_on_examples() {
        for m in 1..=4 {
            for a in [int(0), int(-1), frac(1, 2)] {
                assert!(trace_compatible(&poly("x^7 - 3 x^4 + x + 2"), m, &a).unwrap());
            }
        }
    }
}
