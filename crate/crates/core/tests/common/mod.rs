#![allow(dead_code)]

use cofinite_core::rational::frac;
use cofinite_core::{GradedPoly, Poly, Rational, WeylOp};
use proptest::prelude::*;
use rand::Rng;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |c| *c != Rational::from_integer(0.into()))
}

/// Up to `terms` monomials `c x^i d^j` with `i, j <= max_exp`.
pub fn weyl_op(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylOp> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp), rational()), 0..=terms)
        .prop_map(WeylOp::from_terms)
}

pub fn nonzero_weyl_op(max_exp: u32, terms: usize) -> impl Strategy<Value = WeylOp> {
    weyl_op(max_exp, terms).prop_filter("nonzero", |op| !op.is_zero())
}

pub fn poly(max_deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=max_deg, rational()), 0..=terms).prop_map(Poly::from_terms)
}

pub fn graded_poly(max_exp: u32, terms: usize) -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp), rational()), 0..=terms)
        .prop_map(GradedPoly::from_terms)
}

/// Same shapes drawn from a seeded generator, for fixed-count suites.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_weyl_op(rng: &mut impl Rng, max_exp: u32, terms: usize) -> WeylOp {
    WeylOp::from_terms((0..rng.gen_range(1..=terms)).map(|_| {
        (
            (rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)),
            random_rational(rng),
        )
    }))
}

pub fn random_poly(rng: &mut impl Rng, max_deg: u32, terms: usize) -> Poly {
    Poly::from_terms(
        (0..rng.gen_range(1..=terms)).map(|_| (rng.gen_range(0..=max_deg), random_rational(rng))),
    )
}
