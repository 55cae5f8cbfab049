//! Exact computation in the first Weyl algebra `D(A^1) = Q<x, d>` and its
//! subalgebras: normal forms, symbols, cyclic invariants, operators
//! preserving subrings of covers, twists, cofiniteness of symbol algebras,
//! and the classification of graded cofinite subalgebras by triples
//! `(a, m, p)`.

pub mod classify;
pub mod dxy;
pub mod error;
pub mod expr;
pub mod graded;
pub mod invariants;
pub mod linalg;
mod ops;
pub mod parse;
pub mod perm;
pub mod poly;
pub mod ramification;
pub mod rational;
pub mod subalgebra;
pub mod symbol;
pub mod twist;
pub mod weyl;

pub use classify::{
    classify, forward, verify_triple, Classification, Obstruction, Triple, TripleVerdict,
};
pub use dxy::{dxy_closure_check, dxy_member, Covering, DxyVerdict};
pub use error::{Error, Result};
pub use expr::{Algebra, Certificate, Expr};
pub use graded::{
    cofinite_check, graded_generators, graded_member, CofiniteStatus, CofinitenessVerdict,
    GradedGenSet, GradedMembership, Witness, WitnessCurve,
};
pub use invariants::{
    invariant_basis, retraction_check, reynolds, weight, CyclicAction, WeightObstruction,
};
pub use parse::{parse_graded, parse_op, parse_poly, ParseError};
pub use perm::{sn_uniform, Permutation};
pub use poly::Poly;
pub use ramification::{
    hurwitz_check, ramification_profile, uniform_ramified, RamificationProfile, Uniformity,
};
pub use rational::Rational;
pub use subalgebra::{
    base, member, FilteredGenSet, GenSetFile, Membership, SearchBounds, WordSpan,
};
pub use symbol::GradedPoly;
pub use twist::{canonicalize_p, trace_poly, twist, untwist, TwistForm};
pub use weyl::{ad_power, Order, WeylOp};
