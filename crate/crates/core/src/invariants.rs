//! The cyclic group mu_n acting on D(A^1) by `x -> z^-1 x`, `d -> z d`.
//!
//! Monomials `x^i d^j` are simultaneous eigenvectors with weight
//! `(j - i) mod n`, so the group average is the projection onto weight-zero
//! terms and no roots of unity are ever needed.

use std::fmt;
use std::num::NonZeroU32;

use crate::error::{Error, Result};
use crate::rational::int;
use crate::weyl::WeylOp;

/// The group mu_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicAction(NonZeroU32);

impl CyclicAction {
    pub fn new(n: u32) -> Result<Self> {
        NonZeroU32::new(n)
            .map(Self)
            .ok_or_else(|| Error::InvalidArgument("group order must be positive".into()))
    }

    pub fn order(self) -> u32 {
        self.0.get()
    }

    pub fn weight(self, i: u32, j: u32) -> u32 {
        weight(i, j, self.order())
    }

    pub fn reynolds(self, op: &WeylOp) -> WeylOp {
        WeylOp::from_terms(
            op.terms()
                .filter(|&((i, j), _)| self.weight(i, j) == 0)
                .map(|(k, c)| (k, c.clone())),
        )
    }

    pub fn is_invariant(self, op: &WeylOp) -> bool {
        op.terms().all(|((i, j), _)| self.weight(i, j) == 0)
    }

    /// First term (ascending `(i, j)`) of nonzero weight.
    pub fn offending_term(self, op: &WeylOp) -> Option<(u32, u32)> {
        op.terms()
            .map(|(k, _)| k)
            .find(|&(i, j)| self.weight(i, j) != 0)
    }
}

/// `(j - i) mod n` in `0..n`.
pub fn weight(i: u32, j: u32, n: u32) -> u32 {
    assert!(n >= 1, "weight modulus must be positive");
    let n = i64::from(n);
    (i64::from(j) - i64::from(i)).rem_euclid(n) as u32
}

pub fn reynolds(op: &WeylOp, n: u32) -> Result<WeylOp> {
    Ok(CyclicAction::new(n)?.reynolds(op))
}

pub fn is_invariant(op: &WeylOp, n: u32) -> Result<bool> {
    Ok(CyclicAction::new(n)?.is_invariant(op))
}

/// Invariant monomials `x^i d^j` with `i + j <= dmax`, ascending `(i + j, i)`.
pub fn invariant_basis(n: u32, dmax: u32) -> Result<Vec<WeylOp>> {
    let g = CyclicAction::new(n)?;
    let mut out = Vec::new();
    for total in 0..=dmax {
        for i in 0..=total {
            if g.weight(i, total - i) == 0 {
                out.push(WeylOp::monomial(int(1), i, total - i));
            }
        }
    }
    Ok(out)
}

/// Whether `R(a d b) = a R(d) b` for invariant flanks `a`, `b`.
pub fn retraction_check(a: &WeylOp, d: &WeylOp, b: &WeylOp, n: u32) -> Result<bool> {
    let g = CyclicAction::new(n)?;
    if !g.is_invariant(a) {
        return Err(Error::NonInvariantFlank { which: "left", n });
    }
    if !g.is_invariant(b) {
        return Err(Error::NonInvariantFlank { which: "right", n });
    }
    let lhs = g.reynolds(&(&(a * d) * b));
    let rhs = &(a * &g.reynolds(d)) * b;
    Ok(lhs == rhs)
}

/// Proof that `target` lies outside the subalgebra generated by a set of
/// mu_n-invariant operators: the invariants form a subalgebra and `target`
/// has a term of nonzero weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightObstruction {
    pub n: u32,
    /// `(x-exponent, d-exponent)` of the offending term.
    pub term: (u32, u32),
    pub weight: u32,
}

impl fmt::Display for WeightObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "all generators are mu_{}-invariant but the term x^{} d^{} has weight {}",
            self.n, self.term.0, self.term.1, self.weight
        )
    }
}

/// Obstruction for `n`, if every generator is invariant and `target` is not.
pub fn weight_obstruction<'a>(
    target: &WeylOp,
    generators: impl IntoIterator<Item = &'a WeylOp>,
    n: u32,
) -> Result<Option<WeightObstruction>> {
    let g = CyclicAction::new(n)?;
    if !generators.into_iter().all(|op| g.is_invariant(op)) {
        return Ok(None);
    }
    Ok(g.offending_term(target).map(|term| WeightObstruction {
        n,
        term,
        weight: g.weight(term.0, term.1),
    }))
}

/// Searches `n = 2..=max_n` for a weight obstruction.
pub fn find_weight_obstruction(
    target: &WeylOp,
    generators: &[&WeylOp],
    max_n: u32,
) -> Option<WeightObstruction> {
    (2..=max_n).find_map(|n| {
        weight_obstruction(target, generators.iter().copied(), n)
            .ok()
            .flatten()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_op;

    fn op(s: &str) -> WeylOp {
        parse_op(s).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(3, 1, 2), 0);
        assert_eq!(weight(1, 0, 5), 4);
        assert_eq!(weight(2, 2, 3), 0);
    }

    #[test]
    fn reynolds_examples() {
        assert_eq!(reynolds(&op("x + x^2"), 2).unwrap(), op("x^2"));
        assert_eq!(reynolds(&op("d"), 3).unwrap(), WeylOp::zero());
        assert_eq!(reynolds(&op("x^2 d^2 + x d^2"), 2).unwrap(), op("x^2 d^2"));
        assert!(reynolds(&op("x"), 0).is_err());
    }

    #[test]
    fn basis_order_and_content() {
        let b = invariant_basis(2, 2).unwrap();
        assert_eq!(b, vec![op("1"), op("d^2"), op("x d"), op("x^2")]);
        assert_eq!(
            invariant_basis(1, 1).unwrap(),
            vec![op("1"), op("d"), op("x")]
        );
        assert_eq!(invariant_basis(3, 2).unwrap(), vec![op("1"), op("x d")]);
    }

    #[test]
    fn retraction_examples() {
        assert!(retraction_check(&op("x^2"), &op("d"), &op("x^2"), 2).unwrap());
        assert!(retraction_check(&op("x d"), &op("x d"), &op("x d"), 2).unwrap());
        assert!(retraction_check(&op("x^2"), &op("x + x^2 d^2"), &op("d^2"), 2).unwrap());
        assert_eq!(
            retraction_check(&op("x"), &op("d"), &op("1"), 2),
            Err(Error::NonInvariantFlank {
                which: "left",
                n: 2
            })
        );
    }

    #[test]
    fn obstruction_needs_invariant_generators() {
        let gens = [op("x^2"), op("x d"), op("d^2")];
        let ob = weight_obstruction(&op("d"), &gens, 2).unwrap().unwrap();
        assert_eq!(
            ob,
            WeightObstruction {
                n: 2,
                term: (0, 1),
                weight: 1
            }
        );
        assert!(weight_obstruction(&op("d"), &[op("x"), op("d")], 2)
            .unwrap()
            .is_none());
        assert!(weight_obstruction(&op("x d"), &gens, 2).unwrap().is_none());
    }
}
