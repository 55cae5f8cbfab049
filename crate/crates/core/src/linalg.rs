//! Exact row-echelon spans over Q with provenance tracking.
//!
//! Each row remembers which linear combination of the inserted source
//! vectors produced it, so a successful reduction yields an explicit
//! combination of sources: the raw material of a certificate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

#[derive(Clone, Debug)]
pub struct Row<K> {
    /// Monic at its leading (largest) key.
    pub vector: SparseVec<K>,
    /// `vector = sum combo[s] * source_s`
    pub combo: SparseVec<usize>,
}

#[derive(Clone, Debug)]
pub struct EchelonSpan<K: Ord> {
    rows: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for EchelonSpan<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }
}

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, c: &Rational, v: &SparseVec<K>) {
    for (k, x) in v {
        let entry = target.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c * x;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Result of a reduction: `target = remainder + sum combo[s] * source_s`.
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    pub remainder: SparseVec<K>,
    pub combo: SparseVec<usize>,
    /// True when every key selected by the caller was eliminated.
    pub complete: bool,
}

impl<K: Ord + Clone> EchelonSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows keyed by their leading key, ascending.
    pub fn rows(&self) -> impl DoubleEndedIterator<Item = (&K, &Row<K>)> {
        self.rows.iter()
    }

    /// Adds `source` (the vector of source index `id`). Returns whether it
    /// enlarged the span.
    pub fn insert(&mut self, id: usize, source: SparseVec<K>) -> bool {
        let mut vector = source;
        let mut combo = SparseVec::new();
        combo.insert(id, Rational::one());
        while let Some((lead, c)) = vector
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
        {
            match self.rows.get(&lead) {
                Some(row) => {
                    let neg = -c;
                    axpy(&mut vector, &neg, &row.vector);
                    axpy(&mut combo, &neg, &row.combo);
                }
                None => {
                    let inv = c.recip();
                    for v in vector.values_mut() {
                        *v *= &inv;
                    }
                    for v in combo.values_mut() {
                        *v *= &inv;
                    }
                    self.rows.insert(lead, Row { vector, combo });
                    return true;
                }
            }
        }
        false
    }

    /// Eliminates leading keys of `target` while `select(key)` holds. Stops
    /// with `complete = false` at the first selected key that has no pivot.
    pub fn reduce_while(&self, target: &SparseVec<K>, select: impl Fn(&K) -> bool) -> Reduction<K> {
        let mut remainder = target.clone();
        let mut combo = SparseVec::new();
        loop {
            let Some((lead, c)) = remainder
                .iter()
                .next_back()
                .map(|(k, c)| (k.clone(), c.clone()))
            else {
                return Reduction {
                    remainder,
                    combo,
                    complete: true,
                };
            };
            if !select(&lead) {
                return Reduction {
                    remainder,
                    combo,
                    complete: true,
                };
            }
            let Some(row) = self.rows.get(&lead) else {
                return Reduction {
                    remainder,
                    combo,
                    complete: false,
                };
            };
            axpy(&mut remainder, &-c.clone(), &row.vector);
            axpy(&mut combo, &c, &row.combo);
        }
    }

    /// Exact membership: `Some(combo)` with `target = sum combo[s] source_s`.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let r = self.reduce_while(target, |_| true);
        (r.complete && r.remainder.is_empty()).then_some(r.combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn dependent_vectors_are_detected() {
        let mut s = EchelonSpan::new();
        assert!(s.insert(0, v(&[(2, 1), (1, 1)])));
        assert!(s.insert(1, v(&[(2, 1), (0, 1)])));
        assert!(!s.insert(2, v(&[(1, 2), (0, -2)])));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn solve_returns_source_combination() {
        let mut s = EchelonSpan::new();
        s.insert(0, v(&[(2, 1), (1, 1)]));
        s.insert(1, v(&[(2, 1), (0, 1)]));
        let target = v(&[(1, 3), (0, -3)]);
        let combo = s.solve(&target).unwrap();
        assert_eq!(
            combo,
            v(&[(0, 3), (1, -3)])
                .into_iter()
                .map(|(k, c)| (k as usize, c))
                .collect()
        );
        assert!(s.solve(&v(&[(3, 1)])).is_none());
    }
}
