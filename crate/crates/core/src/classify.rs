//! Graded cofinite subalgebras of D(A^1) are exactly
//! `Q<(x - a)^m, (d + p)^m>` for a unique canonical triple `(a, m, p)`.
//! This module builds the algebra of a triple and recovers the triple from
//! generators.
//!
//! The algebra of `(a, m, p)` is the image of the mu_m-invariants under the
//! shift `x -> x - a` followed by the twist `d -> d + p`, so membership in it
//! is decided exactly by undoing both maps and reading weights. That gives
//! sound non-membership proofs for `verify_triple`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::Certificate;
use crate::invariants::CyclicAction;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::subalgebra::{FilteredGenSet, SearchBounds, WordSpan};
use crate::twist::{canonicalize_p, untwist, TwistForm};
use crate::weyl::WeylOp;

/// Classification datum. `p` is canonical for `(m, a)`, and `m = 1` forces
/// `a = 0`, `p = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    a: Rational,
    m: u32,
    p: Poly,
}

impl Triple {
    pub fn new(a: Rational, m: u32, p: Poly) -> Result<Self> {
        let form = TwistForm::new(p, a, m)?;
        if m == 1 && !(form.a.is_zero() && form.p.is_zero()) {
            return Err(Error::InvalidArgument(
                "m = 1 requires a = 0 and p = 0".into(),
            ));
        }
        if !form.is_canonical() {
            return Err(Error::InvalidArgument(format!(
                "p = {} is not canonical for m = {m}, a = {}",
                form.p, form.a
            )));
        }
        Ok(Self {
            a: form.a,
            m,
            p: form.p,
        })
    }

    /// The whole Weyl algebra.
    pub fn full() -> Self {
        Self {
            a: Rational::zero(),
            m: 1,
            p: Poly::zero(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn contains(&self, op: &WeylOp) -> bool {
        structure_offence(op, &self.a, self.m, &self.p).is_none()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a = {}, m = {}, p = {})", self.a, self.m, self.p)
    }
}

/// First term of nonzero mu_m-weight after undoing the twist by `p` and the
/// shift by `a`; `None` iff `op` lies in the algebra of `(a, m, p)`.
fn structure_offence(op: &WeylOp, a: &Rational, m: u32, p: &Poly) -> Option<((u32, u32), u32)> {
    let g = CyclicAction::new(m).ok()?;
    let straight = untwist(op, p).recenter(a);
    g.offending_term(&straight).map(|t| (t, g.weight(t.0, t.1)))
}

/// `{(x - a)^m, (d + p)^m}`, named `g1`, `g2`.
pub fn forward(t: &Triple) -> FilteredGenSet {
    let u = WeylOp::from_poly(&Poly::linear(&t.a));
    let eta = &WeylOp::d() + &WeylOp::from_poly(&t.p);
    FilteredGenSet::from_ops([u.pow(t.m), eta.pow(t.m)]).expect("nonzero, distinct names")
}

/// Which side of the claimed equality fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// A given generator lies outside the triple's algebra.
    GeneratorOutsideTriple,
    /// A generator of the triple lies outside the generated algebra.
    TripleOutsideGenerators,
}

/// Proof of inequality: every element on one side lies in the algebra of
/// `(a, m, p)` (decided exactly), `element` does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub side: Side,
    pub element: WeylOp,
    pub a: Rational,
    pub m: u32,
    pub p: Poly,
    /// Offending term `(x-exponent, d-exponent)` after untwisting and
    /// shifting, with its weight.
    pub term: (u32, u32),
    pub weight: u32,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.side {
            Side::GeneratorOutsideTriple => "generator",
            Side::TripleOutsideGenerators => "triple generator",
        };
        write!(
            f,
            "{what} {} is outside the algebra of (a = {}, m = {}, p = {}), which contains the other side: \
             term x^{} d^{} has weight {}",
            self.element, self.a, self.m, self.p, self.term.0, self.term.1, self.weight
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleVerdict {
    /// `triple_certificates` write `(x - a)^m`, `(d + p)^m` over the given
    /// generators; `generator_certificates` write each given generator over
    /// the triple's generators `g1`, `g2`.
    Equal {
        triple_certificates: Vec<Certificate>,
        generator_certificates: Vec<Certificate>,
    },
    Distinct(Obstruction),
    Unknown,
}

/// Structures tried when looking for a proof that a triple generator is
/// missing from the generated algebra.
fn candidate_structures(t: &Triple) -> Vec<(Rational, u32, Poly)> {
    let mut out = Vec::new();
    for a in [Rational::zero(), t.a.clone()] {
        for p in [Poly::zero(), t.p.clone()] {
            for n in 2..=8 {
                let c = (a.clone(), n, p.clone());
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

pub fn verify_triple(
    t: &Triple,
    gens: &FilteredGenSet,
    bounds: SearchBounds,
) -> Result<TripleVerdict> {
    let own = forward(t);
    for (_, target) in own.generators() {
        for (a, n, p) in candidate_structures(t) {
            if gens
                .ops()
                .any(|g| structure_offence(g, &a, n, &p).is_some())
            {
                continue;
            }
            if let Some((term, weight)) = structure_offence(target, &a, n, &p) {
                return Ok(TripleVerdict::Distinct(Obstruction {
                    side: Side::TripleOutsideGenerators,
                    element: target.clone(),
                    a,
                    m: n,
                    p,
                    term,
                    weight,
                }));
            }
        }
    }
    for g in gens.ops() {
        if let Some((term, weight)) = structure_offence(g, &t.a, t.m, &t.p) {
            return Ok(TripleVerdict::Distinct(Obstruction {
                side: Side::GeneratorOutsideTriple,
                element: g.clone(),
                a: t.a.clone(),
                m: t.m,
                p: t.p.clone(),
                term,
                weight,
            }));
        }
    }
    let span = WordSpan::build(gens, bounds);
    let Some(triple_certificates) = own
        .ops()
        .map(|op| span.certify(op))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(TripleVerdict::Unknown);
    };
    let own_span = WordSpan::build(&own, bounds);
    let Some(generator_certificates) = gens
        .ops()
        .map(|op| own_span.certify(op))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(TripleVerdict::Unknown);
    };
    Ok(TripleVerdict::Equal {
        triple_certificates,
        generator_certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Classified {
        triple: Triple,
        triple_certificates: Vec<Certificate>,
        generator_certificates: Vec<Certificate>,
    },
    /// Bounds exhausted or a step could not be completed; the reason says which.
    Unknown(String),
}

/// `(a, m)` with `b - b(a) = c (x - a)^m`, if `b` has that shape.
fn shifted_pure_power(b: &Poly) -> Option<(Rational, u32)> {
    let m = b.degree()?;
    let lc = b.leading_coeff();
    // (x - a)^m has x^(m-1) coefficient -m a
    let a = -b.coeff(m - 1) / (&lc * Rational::from_integer(m.into()));
    let shape = Poly::linear(&a).pow(m).scale(&lc);
    let shifted = b - &Poly::constant(b.eval(&a));
    (shifted == shape).then_some((a, m))
}

/// Recovers the triple of the algebra generated by `gens`.
pub fn classify(gens: &FilteredGenSet, bounds: SearchBounds) -> Result<Classification> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument(
            "classify needs at least one generator".into(),
        ));
    }
    let span = WordSpan::build(gens, bounds);
    let Some(b) = span.base().into_iter().find(|b| !b.is_constant()) else {
        return Ok(Classification::Unknown(
            "no non-constant base element within the bounds".into(),
        ));
    };
    let Some((a, m)) = shifted_pure_power(&b) else {
        return Err(Error::InconsistentBase(b));
    };
    let triple = if m == 1 {
        Triple::full()
    } else {
        let u = Poly::linear(&a);
        let top = &WeylOp::from_poly(&u) * &WeylOp::d();
        let Some((delta, _)) = span.complete_top(&top, 1) else {
            return Ok(Classification::Unknown(format!(
                "no element with symbol ({u}) xi within the bounds"
            )));
        };
        // delta = u d + q with q = u p + (element of the base)
        let q = delta.coeff_poly(0);
        let shifted = &q - &Poly::constant(q.eval(&a));
        let (p_raw, rem) = shifted.div_rem(&u);
        debug_assert!(rem.is_zero());
        let (p, _) = canonicalize_p(&p_raw, m, &a)?;
        Triple::new(a, m, p)?
    };
    Ok(match verify_triple(&triple, gens, bounds)? {
        TripleVerdict::Equal {
            triple_certificates,
            generator_certificates,
        } => Classification::Classified {
            triple,
            triple_certificates,
            generator_certificates,
        },
        TripleVerdict::Distinct(ob) => {
            Classification::Unknown(format!("candidate {triple} rejected: {ob}"))
        }
        TripleVerdict::Unknown => Classification::Unknown(format!(
            "candidate {triple} not confirmed within the bounds"
        )),
    })
}
