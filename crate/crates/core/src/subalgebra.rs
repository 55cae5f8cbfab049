//! Finitely generated subalgebras of D(A^1): bounded word spans, membership
//! certificates and the base (order-zero part).
//!
//! The unital subalgebra generated by a set is exactly the linear span of
//! all words in the generators. Spans are computed for words up to a length
//! bound whose normal forms stay inside the degree caps, so a successful
//! solve is a proof of membership while a failure only means "not within
//! these bounds".

use std::collections::HashSet;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{Certificate, Expr};
use crate::linalg::{EchelonSpan, SparseVec};
use crate::parse::parse_op;
use crate::poly::Poly;
use crate::symbol::GradedPoly;
use crate::weyl::WeylOp;

/// Named generators of a filtered subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredGenSet {
    generators: Vec<(String, WeylOp)>,
}

impl FilteredGenSet {
    pub fn new(generators: Vec<(String, WeylOp)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, value) in &generators {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
            if value.is_zero() {
                return Err(Error::ZeroGenerator(name.clone()));
            }
        }
        Ok(Self { generators })
    }

    /// Names the operators `g1, g2, ...` in order.
    pub fn from_ops(ops: impl IntoIterator<Item = WeylOp>) -> Result<Self> {
        Self::new(
            ops.into_iter()
                .enumerate()
                .map(|(k, op)| (format!("g{}", k + 1), op))
                .collect(),
        )
    }

    pub fn generators(&self) -> &[(String, WeylOp)] {
        &self.generators
    }

    pub fn ops(&self) -> impl Iterator<Item = &WeylOp> {
        self.generators.iter().map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub word_length: u32,
    pub x_degree_cap: u32,
    pub order_cap: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            word_length: 5,
            x_degree_cap: 24,
            order_cap: 24,
        }
    }
}

impl SearchBounds {
    pub fn new(word_length: u32, x_degree_cap: u32, order_cap: u32) -> Result<Self> {
        if word_length == 0 || x_degree_cap == 0 || order_cap == 0 {
            return Err(Error::InvalidArgument(
                "search bounds must be positive".into(),
            ));
        }
        Ok(Self {
            word_length,
            x_degree_cap,
            order_cap,
        })
    }

    /// Word-length bound only; degree caps never prune.
    pub fn uncapped(word_length: u32) -> Self {
        Self {
            word_length,
            x_degree_cap: u32::MAX,
            order_cap: u32::MAX,
        }
    }

    fn admits(&self, op: &WeylOp) -> bool {
        op.x_degree().unwrap_or(0) <= self.x_degree_cap
            && op.order().finite().unwrap_or(0) <= self.order_cap
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(Certificate),
    /// Not found within the bounds. Never a proof of non-membership.
    Unknown,
}

impl Membership {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Member(c) => Some(c),
            Membership::Unknown => None,
        }
    }
}

/// Echelon keys put order first so that leading terms are symbols.
fn to_vec(op: &WeylOp) -> SparseVec<(u32, u32)> {
    op.terms().map(|((i, j), c)| ((j, i), c.clone())).collect()
}

fn from_vec(v: &SparseVec<(u32, u32)>) -> WeylOp {
    WeylOp::from_terms(v.iter().map(|(&(j, i), c)| ((i, j), c.clone())))
}

/// The span of all words of length `<= word_length` in the generators whose
/// normal forms lie within the degree caps.
#[derive(Clone, Debug)]
pub struct WordSpan {
    gens: FilteredGenSet,
    bounds: SearchBounds,
    words: Vec<Vec<usize>>,
    span: EchelonSpan<(u32, u32)>,
}

impl WordSpan {
    pub fn build(gens: &FilteredGenSet, bounds: SearchBounds) -> Self {
        let mut words = vec![Vec::new()];
        let mut span = EchelonSpan::new();
        span.insert(0, to_vec(&WeylOp::one()));
        // words of the current length that stayed inside the caps
        let mut frontier: Vec<(Vec<usize>, WeylOp)> = vec![(Vec::new(), WeylOp::one())];
        for _ in 0..bounds.word_length {
            let mut next = Vec::new();
            for (word, value) in &frontier {
                for (g, (_, gen)) in gens.generators().iter().enumerate() {
                    let product = value * gen;
                    // bidegrees add exactly, so a pruned prefix prunes all extensions
                    if !bounds.admits(&product) {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(g);
                    span.insert(words.len(), to_vec(&product));
                    words.push(w.clone());
                    next.push((w, product));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Self {
            gens: gens.clone(),
            bounds,
            words,
            span,
        }
    }

    pub fn bounds(&self) -> SearchBounds {
        self.bounds
    }

    pub fn generators(&self) -> &FilteredGenSet {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    fn certificate(&self, combo: &SparseVec<usize>) -> Certificate {
        let names = self.gens.generators();
        let terms = combo
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&s, c)| {
                let word: Vec<&str> = self.words[s].iter().map(|&g| names[g].0.as_str()).collect();
                Expr::scaled(c.clone(), Expr::word(&word))
            })
            .collect();
        Certificate::new(Expr::sum(terms))
    }

    /// Exact solve for `target` inside the span.
    pub fn certify(&self, target: &WeylOp) -> Option<Certificate> {
        self.span
            .solve(&to_vec(target))
            .map(|combo| self.certificate(&combo))
    }

    /// Finds an element of the span that agrees with `top` in every term of
    /// order `>= min_order`; returns it with its certificate.
    pub fn complete_top(&self, top: &WeylOp, min_order: u32) -> Option<(WeylOp, Certificate)> {
        let target = to_vec(top);
        let r = self.span.reduce_while(&target, |&(j, _)| j >= min_order);
        if !r.complete {
            return None;
        }
        let element = top - &from_vec(&r.remainder);
        Some((element, self.certificate(&r.combo)))
    }

    /// Order-zero elements of the span, one per x-degree, monic and
    /// ascending in degree. Always starts with `1`.
    pub fn base(&self) -> Vec<Poly> {
        self.span
            .rows()
            .filter(|((j, _), _)| *j == 0)
            .map(|(_, row)| from_vec(&row.vector).coeff_poly(0))
            .collect()
    }

    /// Symbols of a basis triangular in (order, x-degree); constants omitted.
    pub fn symbols(&self) -> Vec<GradedPoly> {
        self.span
            .rows()
            .map(|(_, row)| from_vec(&row.vector).symbol())
            .filter(|s| !s.is_constant())
            .collect()
    }

    /// Basis elements (monic at their leading term).
    pub fn basis(&self) -> Vec<WeylOp> {
        self.span
            .rows()
            .map(|(_, row)| from_vec(&row.vector))
            .collect()
    }
}

/// Certificate that `target` lies in the subalgebra generated by `gens`, or
/// `Unknown` when the bounded word span does not reach it.
pub fn member(target: &WeylOp, gens: &FilteredGenSet, bounds: SearchBounds) -> Result<Membership> {
    if target.is_zero() {
        return Err(Error::ZeroTarget);
    }
    Ok(match WordSpan::build(gens, bounds).certify(target) {
        Some(c) => Membership::Member(c),
        None => Membership::Unknown,
    })
}

/// Lower approximation of `A ∩ Q[x]`, triangular by x-degree.
pub fn base(gens: &FilteredGenSet, bounds: SearchBounds) -> Vec<Poly> {
    WordSpan::build(gens, bounds).base()
}

/// Checks that a certificate evaluates to `target` over `gens`.
pub fn check_certificate(cert: &Certificate, target: &WeylOp, gens: &FilteredGenSet) -> bool {
    cert.evaluate(gens.generators()).is_ok_and(|v| &v == target)
}

/// On-disk generator set:
/// `{"generators": [{"name": .., "expr": ..}], "bounds": {..}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSetFile {
    pub generators: Vec<GenEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenEntry {
    pub name: String,
    pub expr: String,
}

/// Partial bounds; missing fields take the defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_length: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<u32>,
}

impl BoundsSpec {
    pub fn resolve(&self, defaults: SearchBounds) -> Result<SearchBounds> {
        SearchBounds::new(
            self.word_length.unwrap_or(defaults.word_length),
            self.x_degree_cap.unwrap_or(defaults.x_degree_cap),
            self.order_cap.unwrap_or(defaults.order_cap),
        )
    }
}

impl GenSetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::GenFile(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::GenFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn generator_set(&self) -> Result<FilteredGenSet> {
        let gens = self
            .generators
            .iter()
            .map(|g| Ok((g.name.clone(), parse_op(&g.expr)?)))
            .collect::<Result<Vec<_>>>()?;
        FilteredGenSet::new(gens)
    }

    pub fn search_bounds(&self) -> Result<SearchBounds> {
        self.bounds
            .unwrap_or_default()
            .resolve(SearchBounds::default())
    }
}
