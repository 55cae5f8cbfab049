//! Finitely generated subalgebras of the symbol ring `Q[x, xi]`: membership
//! and module-finiteness (cofiniteness).
//!
//! Exactness comes from gradings. When every generator is homogeneous for a
//! weight `(wx, wxi)` with positive generator degrees, the subalgebra is
//! graded and each weighted component of a target involves only finitely many
//! generator products, so both answers are proofs. Without such a weight the
//! membership search is bounded and a miss is reported as `Unknown`.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{Certificate, Expr};
use crate::linalg::{EchelonSpan, SparseVec};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::subalgebra::{FilteredGenSet, SearchBounds, WordSpan};
use crate::symbol::GradedPoly;

/// Named generators in `Q[x, xi]`, stored without constant terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGenSet {
    generators: Vec<(String, GradedPoly)>,
}

impl GradedGenSet {
    /// Rejects duplicate names and zero generators. Constant terms are
    /// dropped (the subalgebra is unital) and constant generators removed.
    pub fn new(generators: Vec<(String, GradedPoly)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (name, value) in generators {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateGenerator(name));
            }
            if value.is_zero() {
                return Err(Error::ZeroGenerator(name));
            }
            let stripped = value.strip_constant();
            if !stripped.is_zero() {
                kept.push((name, stripped));
            }
        }
        Ok(Self { generators: kept })
    }

    /// Names the elements `g1, g2, ...` in order.
    pub fn from_polys(polys: impl IntoIterator<Item = GradedPoly>) -> Result<Self> {
        Self::new(
            polys
                .into_iter()
                .enumerate()
                .map(|(k, g)| (format!("g{}", k + 1), g))
                .collect(),
        )
    }

    pub fn generators(&self) -> &[(String, GradedPoly)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn values(&self) -> impl Iterator<Item = &GradedPoly> {
        self.generators.iter().map(|(_, g)| g)
    }

    /// Degrees of all generators for `(wx, wxi)`, when all are homogeneous
    /// of positive degree.
    fn degrees_for(&self, wx: u32, wxi: u32) -> Option<Vec<u32>> {
        self.values()
            .map(|g| g.weighted_degree(wx, wxi).filter(|&d| d > 0))
            .collect()
    }

    /// First weight (by `wx + wxi`, then `wx`) making every generator
    /// homogeneous of positive degree. Zero weights allowed when
    /// `allow_zero`.
    pub fn homogeneous_weight(&self, allow_zero: bool) -> Option<(u32, u32)> {
        let lo = u32::from(!allow_zero);
        (1..=2 * WEIGHT_LIMIT).find_map(|total| {
            (0..=total)
                .map(|wx| (wx, total - wx))
                .filter(|&(wx, wxi)| {
                    wx >= lo && wxi >= lo && wx <= WEIGHT_LIMIT && wxi <= WEIGHT_LIMIT
                })
                .filter(|&(wx, wxi)| wx.gcd(&wxi) == 1)
                .find(|&(wx, wxi)| self.degrees_for(wx, wxi).is_some())
        })
    }
}

const WEIGHT_LIMIT: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradedMembership {
    Member(Certificate),
    /// Proven: the generators are weighted-homogeneous and some component of
    /// the target lies outside the span of all products of that degree.
    NotMember,
    /// Not found by the bounded search (no homogeneous weight available).
    Unknown,
}

/// Products `prod g_i^(a_i)` recorded as exponent vectors.
fn product(gens: &GradedGenSet, exps: &[u32]) -> GradedPoly {
    gens.values()
        .zip(exps)
        .fold(GradedPoly::one(), |acc, (g, &a)| {
            if a == 0 {
                acc
            } else {
                &acc * &g.pow(a)
            }
        })
}

fn product_expr(gens: &GradedGenSet, exps: &[u32]) -> Expr {
    let names: Vec<&str> = gens
        .generators
        .iter()
        .zip(exps)
        .flat_map(|((name, _), &a)| std::iter::repeat_n(name.as_str(), a as usize))
        .collect();
    Expr::word(&names)
}

/// Exponent vectors with `sum a_i w_i == target` (or `<=` when `at_most`).
fn exponent_vectors(weights: &[u32], target: u32, at_most: bool) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], left: u32, at_most: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&w, rest)) = weights.split_first() else {
            if left == 0 || at_most {
                out.push(cur.clone());
            }
            return;
        };
        for a in 0..=left / w {
            cur.push(a);
            go(rest, left - a * w, at_most, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, target, at_most, &mut Vec::new(), &mut out);
    out
}

/// Shortest products first, then fewest distinct generators, then by the
/// sorted name sequence.
fn sort_products(gens: &GradedGenSet, vecs: &mut [Vec<u32>]) {
    let key = |v: &Vec<u32>| {
        let len: u32 = v.iter().sum();
        let distinct = v.iter().filter(|&&a| a > 0).count();
        let names: Vec<&str> = gens
            .generators
            .iter()
            .zip(v)
            .flat_map(|((n, _), &a)| std::iter::repeat_n(n.as_str(), a as usize))
            .collect();
        (len, distinct, names.join(" "))
    };
    vecs.sort_by_cached_key(key);
}

fn to_vec(g: &GradedPoly) -> SparseVec<(u32, u32)> {
    g.terms().map(|(k, c)| (k, c.clone())).collect()
}

/// Solves `target` in the span of the given products.
fn solve_in_products(
    gens: &GradedGenSet,
    products: &[Vec<u32>],
    target: &GradedPoly,
) -> Option<Expr> {
    let mut span = EchelonSpan::new();
    for (s, exps) in products.iter().enumerate() {
        span.insert(s, to_vec(&product(gens, exps)));
    }
    let combo = span.solve(&to_vec(target))?;
    Some(Expr::sum(
        combo
            .into_iter()
            .map(|(s, c)| Expr::scaled(c, product_expr(gens, &products[s])))
            .collect(),
    ))
}

/// Membership of `h` in the unital subalgebra generated by `gens`.
pub fn graded_member(h: &GradedPoly, gens: &GradedGenSet) -> Result<GradedMembership> {
    if h.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let mut terms = Vec::new();
    let c = h.constant_term();
    if !c.is_zero() {
        terms.push(Expr::Const(c));
    }
    let rest = h.strip_constant();
    if rest.is_zero() {
        return Ok(GradedMembership::Member(Certificate::new(Expr::sum(terms))));
    }
    if let Some((wx, wxi)) = gens.homogeneous_weight(true) {
        let degrees = gens.degrees_for(wx, wxi).expect("weight was checked");
        for (deg, component) in rest.weighted_components(wx, wxi) {
            let mut products = exponent_vectors(&degrees, deg, false);
            sort_products(gens, &mut products);
            match solve_in_products(gens, &products, &component) {
                Some(e) => push_flat(&mut terms, e),
                None => return Ok(GradedMembership::NotMember),
            }
        }
        return Ok(GradedMembership::Member(Certificate::new(Expr::sum(terms))));
    }
    let budget = rest.x_degree().unwrap_or(0) + rest.xi_degree().unwrap_or(0) + 1;
    let ones = vec![1; gens.len()];
    let mut products = exponent_vectors(&ones, budget, true);
    sort_products(gens, &mut products);
    Ok(match solve_in_products(gens, &products, &rest) {
        Some(e) => {
            push_flat(&mut terms, e);
            GradedMembership::Member(Certificate::new(Expr::sum(terms)))
        }
        None => GradedMembership::Unknown,
    })
}

fn push_flat(terms: &mut Vec<Expr>, e: Expr) {
    match e {
        Expr::Sum(ts) => terms.extend(ts),
        Expr::Const(c) if c.is_zero() => {}
        other => terms.push(other),
    }
}

/// `target = sum multiplier_i * g_i` over named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCertificate {
    pub target: GradedPoly,
    pub multipliers: Vec<(String, GradedPoly)>,
}

impl IdealCertificate {
    /// Whether the combination over `generators` reproduces `target`.
    pub fn check(&self, generators: &[(String, GradedPoly)]) -> bool {
        let mut acc = GradedPoly::zero();
        for (name, m) in &self.multipliers {
            let Some((_, g)) = generators.iter().find(|(n, _)| n == name) else {
                return false;
            };
            acc = &acc + &(m * g);
        }
        acc == self.target
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofiniteStatus {
    Cofinite,
    NotCofinite,
    Unknown,
}

/// Which sufficient condition produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofiniteRoute {
    /// Generators homogeneous for positive weights `(wx, wxi)`.
    WeightedHomogeneous { wx: u32, wxi: u32 },
    /// Every generator is `c(x) xi^k`.
    XiHomogeneous,
    /// The top xi-forms of the generators decide it; certificates refer to
    /// those forms.
    TopForms,
}

/// A curve through `point` along which every generator is constant, so the
/// subalgebra restricts to scalars on an infinite curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: (Rational, Rational),
    pub curve: WitnessCurve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCurve {
    /// `{(s^wx x0, s^wxi xi0)}`; every generator vanishes on it.
    WeightedOrbit { wx: u32, wxi: u32 },
    /// `{x = x0}`
    VerticalLine,
    /// `{xi = 0}`; every generator vanishes on it.
    HorizontalLine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofinitenessVerdict {
    pub status: CofiniteStatus,
    pub route: Option<CofiniteRoute>,
    pub nullstellensatz_degree: Option<u32>,
    pub witness: Option<Witness>,
    /// For `Cofinite`: membership of `x^N` (weighted route only) and `xi^N`
    /// in the ideal of the generators.
    pub certificates: Vec<IdealCertificate>,
}

impl CofinitenessVerdict {
    fn unknown(route: Option<CofiniteRoute>) -> Self {
        Self {
            status: CofiniteStatus::Unknown,
            route,
            nullstellensatz_degree: None,
            witness: None,
            certificates: vec![],
        }
    }

    fn not_cofinite(route: CofiniteRoute, witness: Witness) -> Self {
        Self {
            status: CofiniteStatus::NotCofinite,
            route: Some(route),
            nullstellensatz_degree: None,
            witness: Some(witness),
            certificates: vec![],
        }
    }
}

/// Restriction of a symbol to a line.
type Restriction = fn(&GradedPoly) -> Poly;

pub const DEFAULT_MAX_DEGREE: u32 = 20;

/// Decides whether `Q[x, xi]` is a finite module over the subalgebra
/// generated by `gens`.
pub fn cofinite_check(gens: &GradedGenSet, max_degree: u32) -> Result<CofinitenessVerdict> {
    let top = gens
        .values()
        .filter_map(GradedPoly::total_degree)
        .max()
        .unwrap_or(0);
    if max_degree < top {
        return Err(Error::InvalidArgument(format!(
            "max degree {max_degree} is below the generator degree {top}"
        )));
    }
    if let Some((wx, wxi)) = gens.homogeneous_weight(false) {
        return Ok(weighted_route(gens, wx, wxi, max_degree));
    }
    if gens.values().all(GradedPoly::is_xi_homogeneous) {
        return Ok(xi_route(gens.generators(), CofiniteRoute::XiHomogeneous));
    }
    let tops: Vec<(String, GradedPoly)> = gens
        .generators
        .iter()
        .map(|(n, g)| (n.clone(), g.top_xi_form()))
        .collect();
    let v = xi_route(&tops, CofiniteRoute::TopForms);
    Ok(match v.status {
        CofiniteStatus::Cofinite => v,
        _ => CofinitenessVerdict::unknown(Some(CofiniteRoute::TopForms)),
    })
}

fn common_zero_weighted(gens: &GradedGenSet) -> Option<(Rational, Rational)> {
    let zero = Rational::zero();
    let one = Rational::one();
    for pt in [(zero.clone(), one.clone()), (one.clone(), zero.clone())] {
        if gens.values().all(|g| g.eval(&pt.0, &pt.1).is_zero()) {
            return Some(pt);
        }
    }
    // (1, s) and (s, 1) with s != 0
    let restrict: [(Restriction, bool); 2] = [
        (|g| g.at_x(&Rational::one()), true),
        (|g| g.at_xi(&Rational::one()), false),
    ];
    for (restrict, x_is_one) in restrict {
        let g = gens
            .values()
            .fold(Poly::zero(), |acc, g| acc.gcd(&restrict(g)));
        if g.is_constant() {
            continue;
        }
        let (roots, _) = g.rational_roots();
        if let Some((s, _)) = roots.into_iter().find(|(s, _)| !s.is_zero()) {
            return Some(if x_is_one { (one, s) } else { (s, one) });
        }
    }
    None
}

/// Multipliers writing `target` in the weighted-degree `deg` part of the
/// ideal, via the Macaulay matrix of that degree.
fn ideal_member(
    gens: &GradedGenSet,
    target: &GradedPoly,
    deg: u32,
    wx: u32,
    wxi: u32,
) -> Option<IdealCertificate> {
    let degrees = gens.degrees_for(wx, wxi)?;
    let mut sources = Vec::new();
    let mut span = EchelonSpan::new();
    for (g, &dg) in degrees.iter().enumerate() {
        if dg > deg {
            continue;
        }
        for m in exponent_vectors(&[wx, wxi], deg - dg, false) {
            let mono = GradedPoly::monomial(Rational::one(), m[0], m[1]);
            span.insert(sources.len(), to_vec(&(&mono * &gens.generators[g].1)));
            sources.push((g, mono));
        }
    }
    let combo = span.solve(&to_vec(target))?;
    let mut multipliers: Vec<(String, GradedPoly)> = Vec::new();
    for (s, c) in combo {
        let (g, mono) = &sources[s];
        let name = &gens.generators[*g].0;
        let term = mono.scale(&c);
        match multipliers.iter_mut().find(|(n, _)| n == name) {
            Some((_, m)) => *m = &*m + &term,
            None => multipliers.push((name.clone(), term)),
        }
    }
    Some(IdealCertificate {
        target: target.clone(),
        multipliers,
    })
}

fn weighted_route(gens: &GradedGenSet, wx: u32, wxi: u32, max_degree: u32) -> CofinitenessVerdict {
    let route = CofiniteRoute::WeightedHomogeneous { wx, wxi };
    if let Some(point) = common_zero_weighted(gens) {
        return CofinitenessVerdict::not_cofinite(
            route,
            Witness {
                point,
                curve: WitnessCurve::WeightedOrbit { wx, wxi },
            },
        );
    }
    let x = |n: u32| GradedPoly::monomial(Rational::one(), n, 0);
    let xi = |n: u32| GradedPoly::monomial(Rational::one(), 0, n);
    let nx = (1..=max_degree).find(|&n| ideal_member(gens, &x(n), n * wx, wx, wxi).is_some());
    let nxi = (1..=max_degree).find(|&n| ideal_member(gens, &xi(n), n * wxi, wx, wxi).is_some());
    let (Some(nx), Some(nxi)) = (nx, nxi) else {
        return CofinitenessVerdict::unknown(Some(route));
    };
    let n = nx.max(nxi);
    let cx =
        ideal_member(gens, &x(n), n * wx, wx, wxi).expect("x^n lies in the ideal once x^nx does");
    let cxi = ideal_member(gens, &xi(n), n * wxi, wx, wxi).expect("likewise for xi");
    CofinitenessVerdict {
        status: CofiniteStatus::Cofinite,
        route: Some(route),
        nullstellensatz_degree: Some(n),
        witness: None,
        certificates: vec![cx, cxi],
    }
}

/// `(g, coeffs)` with `g = gcd(polys) = sum coeffs_i polys_i`, `g` monic.
fn extended_gcd(polys: &[Poly]) -> (Poly, Vec<Poly>) {
    let mut g = Poly::zero();
    let mut coeffs: Vec<Poly> = Vec::new();
    for p in polys {
        // s g + t p = gcd(g, p), by the Euclidean algorithm on (g, p)
        let (mut r0, mut r1) = (g.clone(), p.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1, s0, s1, t0, t1) = (r1, r, s1, s2, t1, t2);
        }
        let lc = if r0.is_zero() {
            Rational::one()
        } else {
            r0.leading_coeff()
        };
        let inv = lc.recip();
        g = r0.scale(&inv);
        for c in &mut coeffs {
            *c = (&*c * &s0).scale(&inv);
        }
        coeffs.push(t0.scale(&inv));
    }
    (g, coeffs)
}

/// Cofiniteness for generators of the form `c_k(x) xi^(d_k)`.
fn xi_route(generators: &[(String, GradedPoly)], route: CofiniteRoute) -> CofinitenessVerdict {
    let base_nonconstant = generators
        .iter()
        .any(|(_, g)| g.xi_degree() == Some(0) && !g.is_constant());
    let mut positive: Vec<(String, u32, Poly)> = generators
        .iter()
        .filter_map(|(n, g)| {
            let d = g.xi_degree()?;
            (d > 0).then(|| (n.clone(), d, g.xi_coeff(d)))
        })
        .collect();
    positive.sort_by_key(|(_, d, _)| *d);
    if !base_nonconstant {
        return CofinitenessVerdict::not_cofinite(
            route,
            Witness {
                point: (Rational::one(), Rational::zero()),
                curve: WitnessCurve::HorizontalLine,
            },
        );
    }
    if positive.is_empty() {
        return CofinitenessVerdict::not_cofinite(
            route,
            Witness {
                point: (Rational::zero(), Rational::one()),
                curve: WitnessCurve::VerticalLine,
            },
        );
    }
    let coeffs: Vec<Poly> = positive.iter().map(|(_, _, c)| c.clone()).collect();
    let (g, _) = extended_gcd(&coeffs);
    if !g.is_constant() {
        let (roots, _) = g.rational_roots();
        return match roots.first() {
            Some((r, _)) => CofinitenessVerdict::not_cofinite(
                route,
                Witness {
                    point: (r.clone(), Rational::one()),
                    curve: WitnessCurve::VerticalLine,
                },
            ),
            None => CofinitenessVerdict::unknown(Some(route)),
        };
    }
    // smallest prefix (by xi-degree) whose coefficients are coprime
    let mut used = 0;
    while used < positive.len() {
        used += 1;
        while used < positive.len() && positive[used].1 == positive[used - 1].1 {
            used += 1;
        }
        let (g, _) = extended_gcd(&coeffs[..used]);
        if g.is_constant() {
            break;
        }
    }
    let n = positive[used - 1].1;
    let (_, a) = extended_gcd(&coeffs[..used]);
    let mut multipliers: Vec<(String, GradedPoly)> = Vec::new();
    for ((name, d, _), ak) in positive[..used].iter().zip(a) {
        if ak.is_zero() {
            continue;
        }
        let m = &GradedPoly::from_poly(&ak) * &GradedPoly::monomial(Rational::one(), 0, n - d);
        multipliers.push((name.clone(), m));
    }
    CofinitenessVerdict {
        status: CofiniteStatus::Cofinite,
        route: Some(route),
        nullstellensatz_degree: Some(n),
        witness: None,
        certificates: vec![IdealCertificate {
            target: GradedPoly::monomial(Rational::one(), 0, n),
            multipliers,
        }],
    }
}

/// Symbols of a basis of the span of all words of length `<= word_length`,
/// triangular by order; constants omitted. Grows with `word_length`.
pub fn graded_generators(gens: &FilteredGenSet, word_length: u32) -> Result<Vec<GradedPoly>> {
    if word_length == 0 {
        return Err(Error::InvalidArgument(
            "word length must be positive".into(),
        ));
    }
    Ok(WordSpan::build(gens, SearchBounds::uncapped(word_length)).symbols())
}
