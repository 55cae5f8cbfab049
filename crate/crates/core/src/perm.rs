//! Permutation groups inside `S_n` for small `n`, enough to decide whether a
//! generated subgroup contains a transposition.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 9;

/// A permutation of `{1, ..., n}`, stored as 0-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u8).collect())
    }

    /// From 1-based images `[s(1), ..., s(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Ok(Self(out))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` on `{1, ..., n}`.
    /// An empty string or `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPermutation(format!("{text:?}: {why}"));
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split_whitespace() {
                let k: usize = tok
                    .parse()
                    .map_err(|_| bad("points must be positive integers"))?;
                if k == 0 || k > n {
                    return Err(bad(&format!("point {k} outside 1..={n}")));
                }
                if used[k - 1] {
                    return Err(bad(&format!("point {k} repeated")));
                }
                used[k - 1] = true;
                cycle.push(k - 1);
            }
            for (idx, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(idx + 1) % cycle.len()] as u8;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(self * other)(i) = self(other(i))`
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j as usize)
            .count()
    }

    pub fn is_transposition(&self) -> bool {
        self.degree() >= 2 && self.fixed_points() == self.degree() - 2
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// All elements of the subgroup generated by `gens`, by breadth-first
/// closure under right multiplication by generators.
pub fn generated_subgroup(n: usize, gens: &[Permutation]) -> Result<Vec<Permutation>> {
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n must lie in 2..={MAX_DEGREE}"
        )));
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::InvalidPermutation(format!(
            "{g} acts on {} points, expected {n}",
            g.degree()
        )));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in gens {
            let next = h.compose(g);
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

/// A transposition in the generated subgroup, if any.
pub fn find_transposition(n: usize, gens: &[Permutation]) -> Result<Option<Permutation>> {
    Ok(generated_subgroup(n, gens)?
        .into_iter()
        .find(Permutation::is_transposition))
}

/// True iff the subgroup generated by `gens` contains no transposition.
pub fn sn_uniform(n: usize, gens: &[Permutation]) -> Result<bool> {
    Ok(find_transposition(n, gens)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!(p("(1 2 3)(4 5)", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("", 3), Permutation::identity(3));
        assert_eq!(p("()", 3).to_string(), "()");
        assert_eq!(p("(2 1)", 3), Permutation::from_images(&[2, 1, 3]).unwrap());
        for bad in ["(1 2", "1 2)", "(1 1)", "(1 4)", "(a)", "(0 1)"] {
            assert!(Permutation::parse_cycles(bad, 3).is_err(), "{bad}");
        }
    }

    #[test]
    fn examples() {
        assert!(sn_uniform(3, &[p("(1 2 3)", 3)]).unwrap());
        assert!(!sn_uniform(3, &[p("(1 2)", 3)]).unwrap());
        assert!(sn_uniform(5, &[]).unwrap());
        assert_eq!(
            generated_subgroup(4, &[p("(1 2 3 4)", 4), p("(1 2)", 4)])
                .unwrap()
                .len(),
            24
        );
        // Klein four-group has no transposition
        let v4 = [p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)];
        assert!(sn_uniform(4, &v4).unwrap());
        assert!(sn_uniform(10, &[]).is_err());
        assert!(sn_uniform(4, &[p("(1 2)", 3)]).is_err());
    }
}
