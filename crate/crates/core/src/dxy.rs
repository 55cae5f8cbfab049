//! Operators preserving the subring `Q[t]` of `Q[x]` for a polynomial cover
//! `t = q(x)`.
//!
//! For `t = (x - a)^m` the decision is exact. In `u = x - a`, an operator of
//! order `d` sends `u^N` to `sum_e f_e(N) u^(N+e)` where each `f_e` is a
//! polynomial of degree `<= d` in `N`. Membership asks `f_e(mk) = 0` for all
//! `k` and all `e` not divisible by `m`, and `d + 1` values of `k` pin down a
//! polynomial of degree `<= d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::subalgebra::FilteredGenSet;
use crate::weyl::WeylOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Covering {
    /// `t = (x - a)^m`
    PurePower { a: Rational, m: u32 },
    /// `t = q(x)`; `power_bound = None` means `order(D) + deg q + 4`.
    GeneralPoly { q: Poly, power_bound: Option<u32> },
}

impl Covering {
    pub fn pure_power(a: Rational, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "cover degree m must be positive".into(),
            ));
        }
        Ok(Covering::PurePower { a, m })
    }

    pub fn general(q: Poly, power_bound: Option<u32>) -> Result<Self> {
        if q.is_constant() {
            return Err(Error::InvalidArgument(
                "covering polynomial must be non-constant".into(),
            ));
        }
        Ok(Covering::GeneralPoly { q, power_bound })
    }

    /// The cover map `t(x)`.
    pub fn map(&self) -> Poly {
        match self {
            Covering::PurePower { a, m } => Poly::linear(a).pow(*m),
            Covering::GeneralPoly { q, .. } => q.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DxyVerdict {
    /// Every `t^k` with `k <= checked_up_to` maps into `Q[t]`. Exact unless
    /// `heuristic`.
    Member { checked_up_to: u32, heuristic: bool },
    /// `D(t^k)` leaves `Q[t]`; `residue` is its part outside `Q[t]`, in `x`.
    NotMember { k: u32, residue: Poly },
}

impl DxyVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, DxyVerdict::Member { .. })
    }
}

/// Part of `f` outside `Q[t]`, read off from the `t`-adic digits.
fn residue_mod(f: &Poly, cov: &Covering) -> Poly {
    match cov {
        Covering::PurePower { a, m } => {
            let centered = f.shift(a);
            Poly::from_terms(
                centered
                    .terms()
                    .filter(|(e, _)| e % m != 0)
                    .map(|(e, c)| (e, c.clone())),
            )
            .shift(&-a)
        }
        Covering::GeneralPoly { q, .. } => {
            let mut inside = Poly::zero();
            let mut qk = Poly::one();
            for digit in f.q_adic_digits(q) {
                inside = &inside + &qk.scale(&digit.constant_term());
                qk = &qk * q;
            }
            f - &inside
        }
    }
}

pub fn dxy_member(op: &WeylOp, cov: &Covering) -> Result<DxyVerdict> {
    let Some(order) = op.order().finite() else {
        return Err(Error::ZeroTarget);
    };
    let (last, heuristic) = match cov {
        Covering::PurePower { .. } => (order, false),
        Covering::GeneralPoly { q, power_bound } => {
            let deg = q.degree().unwrap_or(0);
            (power_bound.unwrap_or(order + deg + 4), true)
        }
    };
    let t = cov.map();
    let mut tk = Poly::one();
    for k in 0..=last {
        let residue = residue_mod(&op.apply(&tk), cov);
        if !residue.is_zero() {
            return Ok(DxyVerdict::NotMember { k, residue });
        }
        tk = &tk * &t;
    }
    Ok(DxyVerdict::Member {
        checked_up_to: last,
        heuristic,
    })
}

/// Random words (with random scalars) in the member generators stay members.
/// Generators that are not members themselves are skipped.
pub fn dxy_closure_check(gens: &FilteredGenSet, cov: &Covering, samples: u32) -> Result<bool> {
    let mut members = Vec::new();
    for g in gens.ops() {
        if dxy_member(g, cov)?.is_member() {
            members.push(g.clone());
        }
    }
    if members.is_empty() {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..samples {
        let mut acc = WeylOp::zero();
        for _ in 0..2 {
            let len = rng.gen_range(1..=3);
            let mut word = WeylOp::scalar(int(rng.gen_range(1..=5)));
            for _ in 0..len {
                word = &word * &members[rng.gen_range(0..members.len())];
            }
            acc = &acc + &word;
        }
        if acc.is_zero() {
            continue;
        }
        if !dxy_member(&acc, cov)?.is_member() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_op, parse_poly};

    fn op(s: &str) -> WeylOp {
        parse_op(s).unwrap()
    }

    #[test]
    fn pure_power_examples() {
        let cov = Covering::pure_power(int(0), 2).unwrap();
        assert_eq!(
            dxy_member(&op("d"), &cov).unwrap(),
            DxyVerdict::NotMember {
                k: 1,
                residue: parse_poly("2 x").unwrap()
            }
        );
        assert_eq!(
            dxy_member(&op("d^2"), &cov).unwrap(),
            DxyVerdict::Member {
                checked_up_to: 2,
                heuristic: false
            }
        );
        assert!(dxy_member(&WeylOp::zero(), &cov).is_err());
    }

    #[test]
    fn shifted_cover_residue_is_in_x() {
        let cov = Covering::pure_power(int(1), 2).unwrap();
        // d (x-1)^2 = 2x - 2
        assert_eq!(
            dxy_member(&op("d"), &cov).unwrap(),
            DxyVerdict::NotMember {
                k: 1,
                residue: parse_poly("2 x - 2").unwrap()
            }
        );
        assert!(dxy_member(&op("(x - 1) d"), &cov).unwrap().is_member());
    }

    #[test]
    fn general_poly_example() {
        let cov = Covering::general(parse_poly("x^2 + x").unwrap(), Some(6)).unwrap();
        assert_eq!(
            dxy_member(&op("(2 x + 1) d"), &cov).unwrap(),
            DxyVerdict::Member {
                checked_up_to: 6,
                heuristic: true
            }
        );
        assert!(!dxy_member(&op("d"), &cov).unwrap().is_member());
        assert!(Covering::general(Poly::one(), None).is_err());
    }

    #[test]
    fn closure_examples() {
        let two = Covering::pure_power(int(0), 2).unwrap();
        let three = Covering::pure_power(int(0), 3).unwrap();
        let g2 = FilteredGenSet::from_ops([op("x^2"), op("x d"), op("d^2")]).unwrap();
        let g3 = FilteredGenSet::from_ops([op("x^3"), op("x d"), op("d^3")]).unwrap();
        assert!(dxy_closure_check(&g2, &two, 20).unwrap());
        assert!(dxy_closure_check(&g3, &three, 20).unwrap());
        let one = FilteredGenSet::from_ops([WeylOp::one()]).unwrap();
        assert!(dxy_closure_check(&one, &two, 5).unwrap());
    }
}
