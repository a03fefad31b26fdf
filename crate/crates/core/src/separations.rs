//! Constrained minimisation `κ_min(X, Y)` and extremal minimum separations.

use serde::Serialize;

use crate::connectivity::ConnectivityOracle;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Default guard on the number of free positions scanned exhaustively.
pub const DEFAULT_MAX_FREE: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinSeparationResult {
    pub value: u32,
    /// Some `Z` with `X ⊆ Z ⊆ Ȳ` and `κ(Z) = value`.
    pub witness: Subset,
}

/// Value plus the least and greatest minimisers of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub value: u32,
    pub leftmost: Subset,
    pub rightmost: Subset,
}

/// Strategy for minimising `κ` over the box `X ⊆ Z ⊆ Ȳ`.
pub trait Minimizer: Send + Sync {
    fn minimize(&self, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<MinSeparationResult>;

    /// Least and greatest minimisers, when the strategy gets them cheaply.
    fn extremal(&self, _k: &ConnectivityOracle, _x: Subset, _y: Subset) -> Result<Option<Extremal>> {
        Ok(None)
    }
}

/// Scans every set in the box.
#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveMinimizer {
    pub max_free: usize,
}

impl Default for ExhaustiveMinimizer {
    fn default() -> Self {
        ExhaustiveMinimizer { max_free: DEFAULT_MAX_FREE }
    }
}

impl ExhaustiveMinimizer {
    fn free(&self, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Subset> {
        check_box(k, x, y)?;
        let free = k.full().minus(x.union(y));
        if free.len() > self.max_free {
            return Err(Error::SizeGuard { guard: "exhaustive-minimizer", actual: free.len(), limit: self.max_free });
        }
        Ok(free)
    }
}

impl Minimizer for ExhaustiveMinimizer {
    fn minimize(&self, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<MinSeparationResult> {
        let free = self.free(k, x, y)?;
        let mut best = MinSeparationResult { value: u32::MAX, witness: x };
        for s in free.submasks() {
            let z = x.union(s);
            let v = k.value(z);
            if v < best.value {
                best = MinSeparationResult { value: v, witness: z };
                if v == 0 {
                    break;
                }
            }
        }
        Ok(best)
    }

    fn extremal(&self, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Option<Extremal>> {
        let free = self.free(k, x, y)?;
        Ok(Some(scan_extremal(k, x, free)))
    }
}

pub(crate) fn scan_extremal(k: &ConnectivityOracle, x: Subset, free: Subset) -> Extremal {
    let mut e = Extremal { value: u32::MAX, leftmost: Subset::EMPTY, rightmost: Subset::EMPTY };
    for s in free.submasks() {
        let z = x.union(s);
        let v = k.value(z);
        if v < e.value {
            e = Extremal { value: v, leftmost: z, rightmost: z };
        } else if v == e.value {
            e.leftmost = e.leftmost.intersect(z);
            e.rightmost = e.rightmost.union(z);
        }
    }
    e
}

fn check_box(k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<()> {
    k.ground().check(x)?;
    k.ground().check(y)?;
    if !x.is_disjoint(y) {
        return Err(Error::Domain(format!("sets {x} and {y} overlap")));
    }
    Ok(())
}

/// `κ_min(X, Y) = min { κ(Z) : X ⊆ Z ⊆ Ȳ }` with the default minimiser.
pub fn kappa_min(k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<MinSeparationResult> {
    ExhaustiveMinimizer::default().minimize(k, x, y)
}

/// Least minimum `(X, Y)`-separation, by pinning elements to the `Y` side
/// one at a time in ascending id order.
pub fn leftmost_by_pinning(m: &dyn Minimizer, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Subset> {
    let v = m.minimize(k, x, y)?.value;
    let mut pinned = y;
    for u in k.full().minus(x.union(y)).iter() {
        if m.minimize(k, x, pinned.with(u))?.value == v {
            pinned = pinned.with(u);
        }
    }
    Ok(k.complement(pinned))
}

pub fn leftmost_min_separation(k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Subset> {
    leftmost_by_pinning(&ExhaustiveMinimizer::default(), k, x, y)
}

/// Greatest minimum `(X, Y)`-separation: the complement of the least
/// minimum `(Y, X)`-separation.
pub fn rightmost_min_separation(k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Subset> {
    Ok(k.complement(leftmost_min_separation(k, y, x)?))
}

/// Value, least and greatest minimiser in one go; falls back to pinning if
/// the minimiser has no shortcut.
pub fn extremal(m: &dyn Minimizer, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Extremal> {
    if let Some(e) = m.extremal(k, x, y)? {
        return Ok(e);
    }
    let value = m.minimize(k, x, y)?.value;
    let leftmost = leftmost_by_pinning(m, k, x, y)?;
    let rightmost = k.complement(leftmost_by_pinning(m, k, y, x)?);
    Ok(Extremal { value, leftmost, rightmost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    /// Forces the generic pinning path.
    struct Plain;
    impl Minimizer for Plain {
        fn minimize(&self, k: &ConnectivityOracle, x: Subset, y: Subset) -> Result<MinSeparationResult> {
            ExhaustiveMinimizer::default().minimize(k, x, y)
        }
    }

    #[test]
    fn triforce_examples() {
        let k = fixtures::triforce();
        let (a, b) = (Subset::singleton(0), Subset::singleton(3));
        let r = kappa_min(&k, a, b).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(k.value(r.witness), 1);
        assert!(a.is_subset(r.witness) && r.witness.is_disjoint(b));
        assert_eq!(leftmost_min_separation(&k, a, b).unwrap(), triangle(0));
        assert_eq!(rightmost_min_separation(&k, a, b).unwrap(), triangle(0).union(triangle(2)));
        let e = extremal(&Plain, &k, a, b).unwrap();
        assert_eq!((e.leftmost, e.rightmost), (triangle(0), triangle(0).union(triangle(2))));
    }

    #[test]
    fn trivial_boxes() {
        let k = fixtures::k4();
        let r = kappa_min(&k, Subset::EMPTY, Subset::EMPTY).unwrap();
        assert_eq!(r.value, 0);
        let x = Subset::from_ids([0, 4]);
        let r = kappa_min(&k, x, k.complement(x)).unwrap();
        assert_eq!((r.value, r.witness), (k.value(x), x));
        assert_eq!(leftmost_min_separation(&k, x, k.complement(x)).unwrap(), x);
        assert_eq!(rightmost_min_separation(&k, x, k.complement(x)).unwrap(), x);
        assert!(kappa_min(&k, x, x).is_err());
    }

    #[test]
    fn p3_examples() {
        let k = fixtures::p3();
        let (a, b) = (Subset::singleton(0), Subset::singleton(1));
        assert_eq!(leftmost_min_separation(&k, a, b).unwrap(), a);
        assert_eq!(rightmost_min_separation(&k, a, b).unwrap(), a);
    }

    #[test]
    fn size_guard() {
        let m = ExhaustiveMinimizer { max_free: 4 };
        let k = fixtures::triforce();
        assert!(matches!(
            m.minimize(&k, Subset::EMPTY, Subset::EMPTY),
            Err(Error::SizeGuard { .. })
        ));
    }
}
