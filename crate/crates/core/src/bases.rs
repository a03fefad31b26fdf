//! Free sets, bases `(B1, B2)` and the lattices `L(B1, B2)`.
//!
//! For a base `B`, `L(B)` is exactly the set of minimum `(b1, b2)`-separations,
//! so its least and greatest elements are the leftmost and rightmost minimum
//! separations. The tests check this against a direct scan of the definition.

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::ConnectivityOracle;
use crate::error::{Error, Result};
use crate::separations::{kappa_min, leftmost_min_separation, rightmost_min_separation, DEFAULT_MAX_FREE};
use crate::subset::{subsets_up_to, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Base {
    pub b1: Subset,
    pub b2: Subset,
    pub order: u32,
}

impl Base {
    /// The base with sides swapped; its lattice is the complement of this one's.
    pub fn flipped(&self) -> Base {
        Base { b1: self.b2, b2: self.b1, order: self.order }
    }
}

/// A free subset of `X`: `Y ⊆ X` with `κ_min(Y, X̄) = κ(X)`, inclusion-minimal.
/// Elements are deleted greedily from the highest id down, so low ids survive.
pub fn free_subset(k: &ConnectivityOracle, x: Subset) -> Result<Subset> {
    k.ground().check(x)?;
    let target = k.value(x);
    let xc = k.complement(x);
    let mut y = x;
    let ids: Vec<usize> = x.iter().collect();
    for &e in ids.iter().rev() {
        if kappa_min(k, y.without(e), xc)?.value == target {
            y = y.without(e);
        }
    }
    Ok(y)
}

pub fn is_base(k: &ConnectivityOracle, b1: Subset, b2: Subset) -> Result<bool> {
    let v = kappa_min(k, b1, b2)?.value as usize;
    Ok(v >= b1.len().max(b2.len()))
}

pub fn base_for_set(k: &ConnectivityOracle, x: Subset) -> Result<Base> {
    let b1 = free_subset(k, x)?;
    let b2 = free_subset(k, k.complement(x))?;
    Ok(Base { b1, b2, order: k.value(x) })
}

fn checked_base(k: &ConnectivityOracle, b: &Base) -> Result<()> {
    if !is_base(k, b.b1, b.b2)? {
        return Err(Error::Domain(format!("({}, {}) is not a base", b.b1, b.b2)));
    }
    Ok(())
}

/// Least element of `L(B)`.
pub fn lattice_bottom(k: &ConnectivityOracle, b: &Base) -> Result<Subset> {
    checked_base(k, b)?;
    leftmost_min_separation(k, b.b1, b.b2)
}

/// Greatest element of `L(B)`.
pub fn lattice_top(k: &ConnectivityOracle, b: &Base) -> Result<Subset> {
    checked_base(k, b)?;
    rightmost_min_separation(k, b.b1, b.b2)
}

/// `X ∈ L(b1, b2)` straight from the definition: `b1` free in `X`, `b2` free in `X̄`.
pub fn in_lattice_by_definition(k: &ConnectivityOracle, b1: Subset, b2: Subset, x: Subset) -> Result<bool> {
    if !b1.is_subset(x) || !b2.is_disjoint(x) {
        return Ok(false);
    }
    let v = k.value(x);
    let xc = k.complement(x);
    Ok(b1.len() as u32 <= v
        && b2.len() as u32 <= v
        && kappa_min(k, b1, xc)?.value == v
        && kappa_min(k, b2, x)?.value == v)
}

/// Every set in the box `[b1, Ū2]` together with the minimum value.
fn scan_box(k: &ConnectivityOracle, b1: Subset, b2: Subset) -> (u32, Vec<Subset>) {
    let free = k.full().minus(b1.union(b2));
    let mut best = u32::MAX;
    let mut members = Vec::new();
    for s in free.submasks() {
        let z = b1.union(s);
        let v = k.value(z);
        if v < best {
            best = v;
            members.clear();
        }
        if v == best {
            members.push(z);
        }
    }
    members.sort();
    (best, members)
}

/// All members of `L(B)`, sorted.
pub fn lattice_members(k: &ConnectivityOracle, b: &Base) -> Result<Vec<Subset>> {
    guard_free(k, b.b1.union(b.b2))?;
    let (v, members) = scan_box(k, b.b1, b.b2);
    if (v as usize) < b.b1.len().max(b.b2.len()) {
        return Err(Error::Domain(format!("({}, {}) is not a base", b.b1, b.b2)));
    }
    Ok(members)
}

fn guard_free(k: &ConnectivityOracle, fixed: Subset) -> Result<()> {
    let free = k.n() - fixed.len();
    if free > DEFAULT_MAX_FREE {
        return Err(Error::SizeGuard { guard: "exhaustive-minimizer", actual: free, limit: DEFAULT_MAX_FREE });
    }
    Ok(())
}

/// One base with its lattice spelled out.
#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub base: Base,
    /// Members of `L(B)` in increasing mask order.
    pub members: Vec<Subset>,
    pub bottom: Subset,
    pub top: Subset,
    /// Union of the singletons in `L(B)`.
    pub singletons: Subset,
}

impl LatticeEntry {
    /// Greatest member contained in `w`, if any.
    pub fn top_within(&self, w: Subset) -> Option<Subset> {
        let mut acc: Option<Subset> = None;
        for &z in &self.members {
            if z.is_subset(w) {
                acc = Some(acc.map_or(z, |a| a.union(z)));
            }
        }
        acc
    }
}

/// All bases of order at most `k`, each with its lattice.
#[derive(Clone, Debug)]
pub struct BaseCatalog {
    pub max_order: u32,
    pub entries: Vec<LatticeEntry>,
}

impl BaseCatalog {
    pub fn build(k: &ConnectivityOracle, max_order: u32) -> Result<BaseCatalog> {
        guard_free(k, Subset::EMPTY)?;
        let size = max_order as usize;
        let small = subsets_up_to(k.full(), size);
        let mut entries: Vec<LatticeEntry> = small
            .par_iter()
            .flat_map_iter(|&b1| {
                let ok1 = k.value(b1) as usize >= b1.len();
                let rest = k.complement(b1);
                let candidates: Vec<Subset> = if ok1 {
                    small.iter().copied().filter(|b2| b2.is_subset(rest)).collect()
                } else {
                    Vec::new()
                };
                candidates.into_iter().filter_map(move |b2| {
                    if (k.value(b2) as usize) < b2.len() {
                        return None;
                    }
                    let (v, members) = scan_box(k, b1, b2);
                    if v > max_order || (v as usize) < b1.len().max(b2.len()) {
                        return None;
                    }
                    let bottom = members.iter().fold(k.full(), |a, &z| a.intersect(z));
                    let top = members.iter().fold(Subset::EMPTY, |a, &z| a.union(z));
                    let singletons = members
                        .iter()
                        .filter(|z| z.len() == 1)
                        .fold(Subset::EMPTY, |a, &z| a.union(z));
                    Some(LatticeEntry { base: Base { b1, b2, order: v }, members, bottom, top, singletons })
                })
            })
            .collect();
        entries.sort_by_key(|e| (e.base.b1, e.base.b2));
        Ok(BaseCatalog { max_order, entries })
    }

    pub fn bases(&self) -> impl Iterator<Item = &Base> {
        self.entries.iter().map(|e| &e.base)
    }

    pub fn of_order(&self, order: u32) -> impl Iterator<Item = &LatticeEntry> {
        self.entries.iter().filter(move |e| e.base.order == order)
    }

    pub fn get(&self, b1: Subset, b2: Subset) -> Option<&LatticeEntry> {
        self.entries
            .binary_search_by_key(&(b1, b2), |e| (e.base.b1, e.base.b2))
            .ok()
            .map(|i| &self.entries[i])
    }
}

/// All bases of order at most `k`, sorted by `(b1, b2)`.
pub fn enumerate_bases(kf: &ConnectivityOracle, k: u32) -> Result<Vec<Base>> {
    Ok(BaseCatalog::build(kf, k)?.entries.into_iter().map(|e| e.base).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    #[test]
    fn free_sets() {
        let k = fixtures::triforce();
        assert_eq!(free_subset(&k, triangle(0)).unwrap(), Subset::singleton(0));
        assert_eq!(free_subset(&k, Subset::EMPTY).unwrap(), Subset::EMPTY);
        assert_eq!(free_subset(&k, k.full()).unwrap(), Subset::EMPTY);
        let b = base_for_set(&k, triangle(0)).unwrap();
        assert_eq!((b.b1, b.b2, b.order), (Subset::singleton(0), Subset::singleton(3), 1));
        let k4 = fixtures::k4();
        let b = base_for_set(&k4, Subset::singleton(2)).unwrap();
        assert_eq!(b.b1, Subset::singleton(2));
        assert!(b.b2.len() <= 2 && b.order == 2);
        assert!(in_lattice_by_definition(&k4, b.b1, b.b2, Subset::singleton(2)).unwrap());
    }

    #[test]
    fn base_checks() {
        let k = fixtures::triforce();
        assert!(is_base(&k, Subset::EMPTY, Subset::EMPTY).unwrap());
        assert!(is_base(&k, Subset::singleton(0), Subset::singleton(3)).unwrap());
        assert!(!is_base(&k, Subset::from_ids([0, 1]), Subset::EMPTY).unwrap());
        assert!(is_base(&k, Subset::singleton(0), Subset::singleton(0)).is_err());
    }

    #[test]
    fn lattice_extremes() {
        let k = fixtures::triforce();
        let b = Base { b1: Subset::singleton(0), b2: Subset::singleton(3), order: 1 };
        assert_eq!(lattice_bottom(&k, &b).unwrap(), triangle(0));
        assert_eq!(lattice_top(&k, &b).unwrap(), triangle(0).union(triangle(2)));
        assert_eq!(lattice_members(&k, &b).unwrap(), vec![triangle(0), triangle(0).union(triangle(2))]);
        let e = Base { b1: Subset::EMPTY, b2: Subset::EMPTY, order: 0 };
        assert_eq!(lattice_bottom(&k, &e).unwrap(), Subset::EMPTY);
        let bad = Base { b1: Subset::from_ids([0, 1]), b2: Subset::EMPTY, order: 0 };
        assert!(lattice_bottom(&k, &bad).is_err());
    }

    #[test]
    fn enumeration_matches_filter() {
        let k = fixtures::triforce();
        let got = enumerate_bases(&k, 1).unwrap();
        let mut want = Vec::new();
        let small = subsets_up_to(k.full(), 1);
        for &b1 in &small {
            for &b2 in &small {
                if b1.is_disjoint(b2) {
                    let v = kappa_min(&k, b1, b2).unwrap().value;
                    if v <= 1 && is_base(&k, b1, b2).unwrap() {
                        want.push(Base { b1, b2, order: v });
                    }
                }
            }
        }
        assert_eq!(got, want);
        assert_eq!(enumerate_bases(&k, 0).unwrap()[0], Base { b1: Subset::EMPTY, b2: Subset::EMPTY, order: 0 });
        let p3 = fixtures::p3();
        let b = enumerate_bases(&p3, 1).unwrap();
        assert!(b.contains(&Base { b1: Subset::singleton(0), b2: Subset::singleton(1), order: 1 }));
    }
}
