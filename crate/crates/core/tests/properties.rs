mod common;

use std::collections::BTreeSet;

use cofinite_core::dxy::DxyVerdict;
use cofinite_core::graded::CofiniteRoute;
use cofinite_core::ramification::is_shifted_pure_power;
use cofinite_core::rational::int;
use cofinite_core::*;
use common::*;
use proptest::prelude::*;

fn op(s: &str) -> WeylOp {
    parse_op(s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_ring_axioms(d in weyl_op(3, 4), e in weyl_op(3, 4), f in weyl_op(3, 4)) {
        prop_assert_eq!(&(&d * &e) * &f, &d * &(&e * &f));
        prop_assert_eq!(&d * &(&e + &f), &(&d * &e) + &(&d * &f));
        prop_assert_eq!(&(&d + &e) * &f, &(&d * &f) + &(&e * &f));
    }

    #[test]
    fn order_and_symbol_are_multiplicative(d in nonzero_weyl_op(4, 4), e in nonzero_weyl_op(4, 4)) {
        let de = &d * &e;
        let od = d.order().finite().unwrap();
        let oe = e.order().finite().unwrap();
        prop_assert_eq!(de.order(), Order::Finite(od + oe));
        prop_assert_eq!(de.symbol(), &d.symbol() * &e.symbol());
    }

    #[test]
    fn action_is_a_representation(d in weyl_op(3, 4), e in weyl_op(3, 4), k in 0u32..=8) {
        let xk = Poly::monomial(int(1), k);
        prop_assert_eq!((&d * &e).apply(&xk), d.apply(&e.apply(&xk)));
    }

    #[test]
    fn commutator_chains_vanish_past_the_order(
        d in nonzero_weyl_op(4, 4),
        fs in prop::collection::vec(poly(4, 3), 5),
    ) {
        let order = d.order().finite().unwrap() as usize;
        let mut chain = d.clone();
        for f in fs.iter().cycle().take(order + 1) {
            chain = WeylOp::from_poly(f).commutator(&chain);
        }
        prop_assert!(chain.is_zero());
        prop_assert!(ad_power(&fs[0], &d, order as u32 + 1).is_zero());
    }

    #[test]
    fn print_parse_round_trip(d in weyl_op(8, 6), g in graded_poly(8, 6)) {
        prop_assert_eq!(parse_op(&d.to_string()).unwrap(), d);
        prop_assert_eq!(parse_graded(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn reynolds_is_a_linear_projection(d in weyl_op(5, 6), e in weyl_op(5, 6), c in rational(), n in 1u32..=5) {
        let r = |x: &WeylOp| reynolds(x, n).unwrap();
        prop_assert_eq!(r(&r(&d)), r(&d));
        prop_assert_eq!(r(&(&d + &e.scale(&c))), &r(&d) + &r(&e).scale(&c));
        prop_assert_eq!(r(&d) == d, CyclicAction::new(n).unwrap().is_invariant(&d));
    }

    #[test]
    fn reynolds_is_a_bimodule_map(
        a in weyl_op(5, 3), d in weyl_op(5, 4), b in weyl_op(5, 3), n in 1u32..=4,
    ) {
        let a = reynolds(&a, n).unwrap();
        let b = reynolds(&b, n).unwrap();
        prop_assert!(retraction_check(&a, &d, &b, n).unwrap());
    }

    #[test]
    fn pure_power_decision_needs_only_order_plus_one_checks(
        d in nonzero_weyl_op(4, 4), m in 1u32..=4, a in -2i64..=2,
    ) {
        let a = Rational::from_integer(a.into());
        let fast = dxy_member(&d, &Covering::pure_power(a.clone(), m).unwrap()).unwrap().is_member();
        let order = d.order().finite().unwrap();
        let t = Poly::linear(&a).pow(m);
        let slow = (0..=3 * order + 3).all(|k| {
            let image = d.apply(&t.pow(k)).shift(&a);
            let ok = image.terms().all(|(e, _)| e % m == 0);
            ok
        });
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn unramified_cover_preserves_everything(d in nonzero_weyl_op(4, 4), a in -3i64..=3) {
        let cov = Covering::pure_power(Rational::from_integer(a.into()), 1).unwrap();
        prop_assert!(dxy_member(&d, &cov).unwrap().is_member());
    }

    #[test]
    fn twist_is_a_symbol_preserving_automorphism(
        d in weyl_op(3, 3), e in weyl_op(3, 3), p in poly(3, 3), q in poly(3, 3),
    ) {
        prop_assert_eq!(twist(&(&d * &e), &p), &twist(&d, &p) * &twist(&e, &p));
        prop_assert_eq!(twist(&d, &p).symbol(), d.symbol());
        prop_assert_eq!(untwist(&twist(&d, &p), &p), d.clone());
        prop_assert_eq!(twist(&twist(&d, &p), &q), twist(&d, &(&p + &q)));
    }

    #[test]
    fn trace_is_linear_over_the_base(f in poly(8, 5), m in 1u32..=4, a in -2i64..=2) {
        let a = Rational::from_integer(a.into());
        let um = Poly::linear(&a).pow(m);
        prop_assert_eq!(
            trace_poly(&(&um * &f), m, &a).unwrap(),
            &um * &trace_poly(&f, m, &a).unwrap()
        );
    }

    #[test]
    fn trace_commutes_with_derivations(f in poly(8, 5), k in 0u32..=3, m in 1u32..=4, a in -2i64..=2) {
        let a = Rational::from_integer(a.into());
        let g = &Poly::linear(&a).pow(m * k) * &f;
        prop_assert!(twist::trace_compatible(&g, m, &a).unwrap());
    }

    #[test]
    fn canonical_split_reassembles(p in poly(8, 5), m in 1u32..=4, a in -2i64..=2) {
        let a = Rational::from_integer(a.into());
        let (canon, r) = canonicalize_p(&p, m, &a).unwrap();
        let u = Poly::linear(&a);
        let lattice = (&u.pow(m - 1) * &r.compose(&u.pow(m))).scale(&Rational::from_integer(m.into()));
        prop_assert_eq!(&canon + &lattice, p);
        // u * p_canon has no exponent divisible by m, so its trace vanishes
        prop_assert!(trace_poly(&(&u * &canon), m, &a).unwrap().is_zero());
        prop_assert_eq!(canonicalize_p(&canon, m, &a).unwrap(), (canon.clone(), Poly::zero()));
    }

    #[test]
    fn membership_certificates_are_sound_and_monotone(
        gens in prop::collection::vec(nonzero_weyl_op(2, 2), 1..=3),
        target in nonzero_weyl_op(2, 2),
    ) {
        let set = FilteredGenSet::from_ops(gens).unwrap();
        let small = SearchBounds::new(2, 8, 8).unwrap();
        let large = SearchBounds::new(3, 12, 12).unwrap();
        if let Membership::Member(c) = member(&target, &set, small).unwrap() {
            prop_assert_eq!(c.evaluate(set.generators()).unwrap(), target.clone());
            prop_assert!(member(&target, &set, large).unwrap().certificate().is_some());
            prop_assert_eq!(member(&target, &set, small).unwrap(), Membership::Member(c));
        }
    }

    #[test]
    fn graded_certificates_are_sound(
        gens in prop::collection::vec(graded_poly(2, 2), 1..=3),
        target in graded_poly(3, 3),
    ) {
        prop_assume!(!target.is_zero() && gens.iter().all(|g| !g.is_zero()));
        let set = GradedGenSet::from_polys(gens).unwrap();
        if let GradedMembership::Member(c) = graded_member(&target, &set).unwrap() {
            prop_assert_eq!(c.evaluate(set.generators()).unwrap(), target);
        }
    }

    #[test]
    fn graded_non_membership_matches_semigroup_oracle(
        exps in prop::collection::vec((0u32..=3, 0u32..=3), 1..=3),
        target in (0u32..=6, 0u32..=6),
    ) {
        prop_assume!(exps.iter().all(|&e| e != (0, 0)) && target != (0, 0));
        let gens: Vec<GradedPoly> = exps.iter().map(|&(i, k)| GradedPoly::monomial(int(1), i, k)).collect();
        let set = GradedGenSet::from_polys(gens).unwrap();
        let h = GradedPoly::monomial(int(1), target.0, target.1);
        let found = graded_member(&h, &set).unwrap();
        prop_assert_ne!(&found, &GradedMembership::Unknown);
        let member = matches!(found, GradedMembership::Member(_));
        prop_assert_eq!(member, semigroup_contains(&exps, target));
    }

    #[test]
    fn monomial_cofiniteness_matches_combinatorics(
        exps in prop::collection::vec((0u32..=4, 0u32..=4), 1..=4),
    ) {
        prop_assume!(exps.iter().all(|&e| e != (0, 0)));
        let gens: Vec<GradedPoly> = exps.iter().map(|&(i, k)| GradedPoly::monomial(int(1), i, k)).collect();
        let v = cofinite_check(&GradedGenSet::from_polys(gens).unwrap(), 20).unwrap();
        let expected = exps.iter().any(|&(i, k)| k == 0 && i > 0) && exps.iter().any(|&(i, k)| i == 0 && k > 0);
        let status = if expected { CofiniteStatus::Cofinite } else { CofiniteStatus::NotCofinite };
        prop_assert_eq!(v.status, status);
    }

    #[test]
    fn cofiniteness_is_stable_under_scaling_and_enlarging(
        gens in prop::collection::vec(graded_poly(3, 3), 1..=3),
        extra in graded_poly(3, 3),
        scales in prop::collection::vec(nonzero_rational(), 4),
    ) {
        prop_assume!(gens.iter().all(|g| !g.is_zero()) && !extra.is_zero());
        let base = GradedGenSet::from_polys(gens.clone()).unwrap();
        let v = cofinite_check(&base, 20).unwrap();
        for c in &v.certificates {
            // certificates of the top-form route refer to top forms
            if v.route != Some(CofiniteRoute::TopForms) {
                prop_assert!(c.check(base.generators()));
            }
        }
        let scaled = GradedGenSet::from_polys(gens.iter().zip(&scales).map(|(g, c)| g.scale(c))).unwrap();
        prop_assert_eq!(cofinite_check(&scaled, 20).unwrap().status, v.status);
        let mut bigger = gens.clone();
        bigger.push(extra);
        let w = cofinite_check(&GradedGenSet::from_polys(bigger).unwrap(), 20).unwrap();
        if v.status == CofiniteStatus::Cofinite {
            prop_assert_ne!(w.status, CofiniteStatus::NotCofinite);
        }
        if w.status == CofiniteStatus::NotCofinite {
            prop_assert_ne!(v.status, CofiniteStatus::Cofinite);
        }
    }

    #[test]
    fn hurwitz_holds_on_split_derivatives(
        roots in prop::collection::vec((-3i64..=3, 1u32..=3), 0..=3),
        lead in nonzero_rational(),
        c in rational(),
    ) {
        let dq = roots.iter().fold(Poly::constant(lead), |acc, &(r, k)| {
            &acc * &Poly::linear(&Rational::from_integer(r.into())).pow(k)
        });
        prop_assume!(dq.degree().unwrap() <= 7);
        let q = &integrate(&dq) + &Poly::constant(c);
        prop_assert!(hurwitz_check(&q).unwrap());
        prop_assert_eq!(uniform_ramified(&q).unwrap().is_uniform(), is_shifted_pure_power(&q));
    }

    #[test]
    fn sn_uniform_matches_closure_oracle(
        n in 2usize..=5,
        seeds in prop::collection::vec(prop::collection::vec(0usize..100, 5), 0..=2),
    ) {
        let images: Vec<Vec<usize>> = seeds.iter().map(|s| shuffled(n, s)).collect();
        let gens: Vec<Permutation> = images.iter().map(|i| Permutation::from_images(i).unwrap()).collect();
        prop_assert_eq!(sn_uniform(n, &gens).unwrap(), !oracle_has_transposition(n, &images));
    }

    #[test]
    fn distinct_triples_are_never_confused(i in 0usize..12, j in 0usize..12) {
        prop_assume!(i != j);
        let ts = small_triples();
        let verdict = verify_triple(&ts[i], &forward(&ts[j]), SearchBounds::new(3, 24, 24).unwrap()).unwrap();
        let equal = matches!(verdict, TripleVerdict::Equal { .. });
        prop_assert!(!equal);
    }
}

#[test]
fn crafted_chains_do_not_vanish_at_the_order() {
    // (ad x)^d (d^d) = (-1)^d d!
    for d in 1..=4u32 {
        let chain = ad_power(&Poly::x(), &WeylOp::d().pow(d), d);
        assert!(!chain.is_zero(), "order {d}");
        assert_eq!(chain.order(), Order::Finite(0));
    }
}

#[test]
fn spans_are_deterministic() {
    let g = FilteredGenSet::from_ops([op("x^2"), op("d^2")]).unwrap();
    let a = member(&op("x d"), &g, SearchBounds::default()).unwrap();
    let b = member(&op("x d"), &g, SearchBounds::default()).unwrap();
    assert_eq!(
        a.certificate().unwrap().to_string(),
        b.certificate().unwrap().to_string()
    );
}

#[test]
fn symbol_generators_grow_with_word_length() {
    let g = FilteredGenSet::from_ops([op("x^2"), op("d^2")]).unwrap();
    let mut prev: BTreeSet<String> = BTreeSet::new();
    for l in 1..=4 {
        let now: BTreeSet<String> = graded_generators(&g, l)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert!(prev.is_subset(&now), "length {l}");
        prev = now;
    }
}

#[test]
fn pure_power_verdicts_report_exactness() {
    let cov = Covering::pure_power(int(0), 3).unwrap();
    assert_eq!(
        dxy_member(&op("d^3"), &cov).unwrap(),
        DxyVerdict::Member {
            checked_up_to: 3,
            heuristic: false
        }
    );
}

fn integrate(p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms()
            .map(|(e, c)| (e + 1, c / Rational::from_integer((e + 1).into()))),
    )
}

/// Exponent semigroup generated by `gens` contains `target`.
fn semigroup_contains(gens: &[(u32, u32)], target: (u32, u32)) -> bool {
    let mut reach = BTreeSet::from([(0u32, 0u32)]);
    let mut frontier = vec![(0u32, 0u32)];
    while let Some((i, k)) = frontier.pop() {
        for &(a, b) in gens {
            let next = (i + a, k + b);
            if next.0 <= target.0 && next.1 <= target.1 && reach.insert(next) {
                frontier.push(next);
            }
        }
    }
    reach.contains(&target)
}

/// 1-based images of a permutation of `{1, ..., n}` built from swaps.
fn shuffled(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut images: Vec<usize> = (1..=n).collect();
    for (k, s) in seed.iter().enumerate() {
        images.swap(k % n, s % n);
    }
    images
}

/// Fixed point of `H <- H ∪ H·H` from the identity and the generators, then
/// a search for an element moving exactly two points.
fn oracle_has_transposition(n: usize, gens: &[Vec<usize>]) -> bool {
    let mut group: BTreeSet<Vec<usize>> = BTreeSet::from([(1..=n).collect()]);
    group.extend(gens.iter().cloned());
    loop {
        let current: Vec<Vec<usize>> = group.iter().cloned().collect();
        let before = group.len();
        for a in &current {
            for b in &current {
                group.insert(b.iter().map(|&i| a[i - 1]).collect());
            }
        }
        if group.len() == before {
            break;
        }
    }
    group
        .iter()
        .any(|p| p.iter().enumerate().filter(|&(i, &j)| i + 1 != j).count() == 2)
}

fn small_triples() -> Vec<Triple> {
    let mut out = vec![Triple::full()];
    for (a, m, p) in [
        (0, 2, "0"),
        (1, 2, "0"),
        (0, 2, "1"),
        (0, 2, "x^2"),
        (-1, 2, "1"),
        (0, 3, "0"),
        (0, 3, "x"),
        (0, 3, "1"),
        (2, 3, "0"),
        (0, 4, "0"),
        (1, 3, "1"),
    ] {
        out.push(Triple::new(Rational::from_integer(a.into()), m, parse_poly(p).unwrap()).unwrap());
    }
    out
}
