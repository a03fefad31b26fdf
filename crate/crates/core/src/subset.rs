//! Bitset subsets of a ground set with at most 64 elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of ground-set elements.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set, stored as a bit mask over dense element ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    /// The full set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Subset {
        let mut s = Subset::EMPTY;
        for i in ids {
            s = s.with(i);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    #[inline]
    pub fn intersect(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    /// Complement relative to `full`.
    #[inline]
    pub fn complement(self, full: Subset) -> Subset {
        Subset(full.0 & !self.0)
    }

    #[inline]
    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn submasks(self) -> Submasks {
        Submasks { set: self.0, next: Some(0) }
    }

    /// Apply an element permutation: element `i` goes to `perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Subset {
        Subset::from_ids(self.iter().map(|i| perm[i]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Carry-ripple enumeration of all submasks of a mask.
pub struct Submasks {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;

    #[inline]
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        let nxt = cur.wrapping_sub(self.set) & self.set;
        self.next = if nxt == 0 { None } else { Some(nxt) };
        Some(Subset(cur))
    }
}

/// All subsets of `set` with at most `k` elements, in increasing mask order.
pub fn subsets_up_to(set: Subset, k: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = set.submasks().filter(|s| s.len() <= k).collect();
    out.sort();
    out
}

/// The ground set `U = {0, .., n-1}` with optional labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<GroundSet> {
        if n == 0 {
            return Err(Error::Domain("ground set must be nonempty".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::Unsupported(format!(
                "ground set has {n} elements, at most {MAX_ELEMENTS} are supported"
            )));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<GroundSet> {
        let mut g = GroundSet::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Domain check for a subset.
    pub fn check(&self, x: Subset) -> Result<()> {
        if x.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "subset {x} is not over a ground set of {} elements",
                self.n
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration_counts() {
        let s = Subset::from_ids([1, 4, 7]);
        let subs: Vec<_> = s.submasks().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(Subset::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn complement_round_trip() {
        let full = Subset::full(9);
        let x = Subset::from_ids([0, 3, 8]);
        assert_eq!(x.complement(full).complement(full), x);
        assert_eq!(x.complement(full).len(), 6);
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn ground_set_guards() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        let g = GroundSet::new(3).unwrap();
        assert!(g.check(Subset::singleton(3)).is_err());
        assert!(g.check(Subset::singleton(2)).is_ok());
    }
}
