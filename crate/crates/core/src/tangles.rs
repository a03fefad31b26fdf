//! Tangles, the decision procedure for tangles avoiding given sets, and the
//! searches for minimal members built on top of it.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::bases::{lattice_members, Base, BaseCatalog};
use crate::connectivity::ConnectivityOracle;
use crate::error::{Error, Result};
use crate::separations::{kappa_min, ExhaustiveMinimizer, Minimizer, DEFAULT_MAX_FREE};
use crate::subset::{subsets_up_to, Subset};

/// Read access to a tangle of some order.
pub trait TangleMembership: Send + Sync {
    fn order(&self) -> u32;

    /// Whether `x` is a member. Sets of order `≥ order()` are never members.
    fn contains(&self, x: Subset) -> bool;
}

impl<T: TangleMembership + ?Sized> TangleMembership for &T {
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn contains(&self, x: Subset) -> bool {
        (**self).contains(x)
    }
}

impl<T: TangleMembership + ?Sized> TangleMembership for Arc<T> {
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn contains(&self, x: Subset) -> bool {
        (**self).contains(x)
    }
}

/// Counters for the decision procedure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub oracle_calls: u64,
    pub decisions: u64,
    pub decision_cache_hits: u64,
}

type DecisionKey = (u32, Vec<Subset>);

/// Shared state for all tangle computations over one connectivity function:
/// base catalogs and a cache of avoidance decisions.
pub struct Engine {
    oracle: Arc<ConnectivityOracle>,
    minimizer: Arc<dyn Minimizer>,
    catalogs: Mutex<HashMap<u32, Arc<BaseCatalog>>>,
    decisions: Mutex<HashMap<DecisionKey, bool>>,
    decision_count: AtomicU64,
    cache_hits: AtomicU64,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine").field("oracle", &self.oracle).finish()
    }
}

impl Engine {
    pub fn new(oracle: Arc<ConnectivityOracle>) -> Arc<Engine> {
        Engine::with_minimizer(oracle, Arc::new(ExhaustiveMinimizer::default()))
    }

    pub fn with_minimizer(oracle: Arc<ConnectivityOracle>, minimizer: Arc<dyn Minimizer>) -> Arc<Engine> {
        Arc::new(Engine {
            oracle,
            minimizer,
            catalogs: Mutex::new(HashMap::new()),
            decisions: Mutex::new(HashMap::new()),
            decision_count: AtomicU64::new(0),
            cache_hits: AtomicU64::new(0),
        })
    }

    pub fn oracle(&self) -> &Arc<ConnectivityOracle> {
        &self.oracle
    }

    pub fn minimizer(&self) -> &dyn Minimizer {
        &*self.minimizer
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            oracle_calls: self.oracle.calls(),
            decisions: self.decision_count.load(Ordering::Relaxed),
            decision_cache_hits: self.cache_hits.load(Ordering::Relaxed),
        }
    }

    #[inline]
    pub fn kappa(&self, x: Subset) -> u32 {
        self.oracle.value(x)
    }

    #[inline]
    pub fn full(&self) -> Subset {
        self.oracle.full()
    }

    /// All bases of order at most `k` with their lattices (cached).
    pub fn catalog(&self, k: u32) -> Result<Arc<BaseCatalog>> {
        if let Some(c) = self.catalogs.lock().unwrap().get(&k) {
            return Ok(Arc::clone(c));
        }
        let bigger = {
            let cats = self.catalogs.lock().unwrap();
            cats.iter().filter(|(&m, _)| m > k).min_by_key(|(&m, _)| m).map(|(_, c)| Arc::clone(c))
        };
        let cat = match bigger {
            Some(b) => BaseCatalog {
                max_order: k,
                entries: b.entries.iter().filter(|e| e.base.order <= k).cloned().collect(),
            },
            None => BaseCatalog::build(&self.oracle, k)?,
        };
        let cat = Arc::new(cat);
        self.catalogs.lock().unwrap().insert(k, Arc::clone(&cat));
        Ok(cat)
    }

    /// Decide whether some tangle of order `target` contains `t0` and has no
    /// member contained in any of the `avoid` sets.
    ///
    /// With `k = target - 1`, runs the closure over all bases of order `≤ k`:
    /// `μ(B)` collects members of `L(B)` known to admit a partial
    /// decomposition of width `≤ k` over the forbidden family; such a tangle
    /// exists iff no two of them cover `U`.
    pub fn exists_tangle_avoiding(
        &self,
        t0: Option<&dyn TangleMembership>,
        avoid: &[Subset],
        target: u32,
    ) -> Result<bool> {
        for &a in avoid {
            self.oracle.ground().check(a)?;
            if target == 0 || self.kappa(a) > target - 1 {
                return Err(Error::Domain(format!(
                    "avoid set {a} has order {} but the target order is {target}",
                    self.kappa(a)
                )));
            }
        }
        if target == 0 {
            return Ok(true);
        }
        let t0 = t0.filter(|t| t.order() > 0);
        if let Some(t) = t0 {
            if t.order() >= target {
                return Err(Error::Domain(format!(
                    "base tangle has order {} but the target order is {target}",
                    t.order()
                )));
            }
        }
        let avoid = normalize_avoid(avoid);
        self.decision_count.fetch_add(1, Ordering::Relaxed);
        if t0.is_none() {
            let key = (target, avoid.clone());
            if let Some(&v) = self.decisions.lock().unwrap().get(&key) {
                self.cache_hits.fetch_add(1, Ordering::Relaxed);
                return Ok(v);
            }
            let v = self.decide(None, &avoid, target)?;
            self.decisions.lock().unwrap().insert(key, v);
            return Ok(v);
        }
        self.decide(t0, &avoid, target)
    }

    fn decide(&self, t0: Option<&dyn TangleMembership>, avoid: &[Subset], target: u32) -> Result<bool> {
        let n = self.oracle.n();
        if n > DEFAULT_MAX_FREE {
            return Err(Error::SizeGuard { guard: "exhaustive-minimizer", actual: n, limit: DEFAULT_MAX_FREE });
        }
        let k = target - 1;
        let cat = self.catalog(k)?;
        let full = self.full();
        let mut mu: Vec<Subset> = Vec::with_capacity(cat.entries.len());
        for e in &cat.entries {
            let mut y = e.singletons;
            for &a in avoid {
                if let Some(t) = e.top_within(a) {
                    y = y.union(t);
                }
            }
            if let Some(t) = t0 {
                let flipped: Vec<Subset> = e.members.iter().map(|&z| z.complement(full)).collect();
                if let Some(bot) = minimal_in_lattice(&flipped, |z| t.contains(z)) {
                    y = y.union(bot.complement(full));
                }
            }
            mu.push(y);
        }
        let mut cover = CoverTables::new(n);
        for &m in &mu {
            cover.add(m);
        }
        loop {
            if cover.pair[full.0 as usize] {
                return Ok(false);
            }
            let mut updates = Vec::new();
            for (i, e) in cat.entries.iter().enumerate() {
                let mut grown = mu[i];
                for &z in &e.members {
                    if !z.is_subset(grown) && cover.pair[z.0 as usize] {
                        grown = grown.union(z);
                    }
                }
                if grown != mu[i] {
                    updates.push((i, grown));
                }
            }
            if updates.is_empty() {
                return Ok(true);
            }
            for (i, g) in updates {
                mu[i] = g;
                cover.add(g);
            }
        }
    }

    pub fn has_tangle_of_order(&self, k: u32) -> Result<bool> {
        self.exists_tangle_avoiding(None, &[], k)
    }

    /// Largest order of a tangle, which equals the branch width.
    pub fn max_tangle_order(&self) -> Result<u32> {
        let mut k = 0;
        while self.has_tangle_of_order(k + 1)? {
            k += 1;
        }
        Ok(k)
    }

    /// Least member of `T ∩ L(B)`.
    pub fn tangle_lattice_bottom(&self, t: &dyn TangleMembership, b: &Base) -> Result<Option<Subset>> {
        let members = self.lattice_of(b)?;
        Ok(minimal_in_lattice(&members, |z| t.contains(z)))
    }

    fn lattice_of(&self, b: &Base) -> Result<Vec<Subset>> {
        if b.order == 0 || b.order <= self.cached_max_order() {
            let cat = self.catalog(b.order)?;
            if let Some(e) = cat.get(b.b1, b.b2) {
                return Ok(e.members.clone());
            }
        }
        lattice_members(&self.oracle, b)
    }

    fn cached_max_order(&self) -> u32 {
        self.catalogs.lock().unwrap().keys().copied().max().unwrap_or(0)
    }

    /// Inclusion-minimal member of `S` in the box `[y1, y2]`, where `S` is a
    /// union of tangles of order `k`. Shrinks by guessing an element to drop
    /// and a small free set of the smaller member.
    pub fn minimal_member_in_box(
        &self,
        s: &dyn Fn(Subset) -> bool,
        k: u32,
        y1: Subset,
        y2: Subset,
    ) -> Result<Option<Subset>> {
        if !y1.is_subset(y2) {
            return Err(Error::Domain(format!("{y1} is not a subset of {y2}")));
        }
        if k == 0 {
            return Ok(None);
        }
        let kf = &*self.oracle;
        let mut x = y2;
        let mut tried: HashSet<Subset> = HashSet::new();
        loop {
            let mut next = None;
            'search: for e in x.minus(y1).iter() {
                let w = x.without(e);
                let wc = kf.complement(w);
                for z in subsets_up_to(w, k as usize - 1) {
                    let start = z.union(y1);
                    if kappa_min(kf, start, wc)?.value > k - 1 {
                        continue;
                    }
                    let mut a = start;
                    for y in w.minus(a).iter() {
                        if kappa_min(kf, a.with(y), wc)?.value <= k - 1 {
                            a = a.with(y);
                        }
                    }
                    if tried.insert(a) && s(a) {
                        next = Some(a);
                        break 'search;
                    }
                }
            }
            match next {
                Some(a) => x = a,
                None => break,
            }
        }
        Ok(if kf.value(x) < k && s(x) { Some(x) } else { None })
    }

    /// Leftmost minimum `(T, T′)`-separation, or `None` if one tangle is a
    /// truncation of the other.
    pub fn leftmost_tangle_separation(
        &self,
        t: &dyn TangleMembership,
        t2: &dyn TangleMembership,
    ) -> Result<Option<Subset>> {
        let m = t.order().min(t2.order());
        if m == 0 {
            return Ok(None);
        }
        let cat = self.catalog(m - 1)?;
        let full = self.full();
        for j in 0..m {
            let mut found = Vec::new();
            for e in cat.of_order(j) {
                if !t.contains(e.top) || !t2.contains(e.bottom.complement(full)) {
                    continue;
                }
                let a = minimal_in_lattice(&e.members, |z| t.contains(z));
                let flipped: Vec<Subset> = e.members.iter().map(|z| z.complement(full)).collect();
                let b = minimal_in_lattice(&flipped, |z| t2.contains(z));
                if let (Some(a), Some(b)) = (a, b) {
                    if a.is_disjoint(b) {
                        found.push(a);
                    }
                }
            }
            if !found.is_empty() {
                return least_of(found).map(Some);
            }
        }
        Ok(None)
    }

    /// Leftmost minimum-order member `Z` of `T` with `Z ⊆ w`.
    pub fn leftmost_member_within(&self, t: &dyn TangleMembership, w: Subset) -> Result<Option<Subset>> {
        let m = t.order();
        if m == 0 {
            return Ok(None);
        }
        let cat = self.catalog(m - 1)?;
        for j in 0..m {
            let mut found = Vec::new();
            for e in cat.of_order(j) {
                let inside: Vec<Subset> = e.members.iter().copied().filter(|z| z.is_subset(w)).collect();
                if let Some(a) = minimal_in_lattice(&inside, |z| t.contains(z)) {
                    found.push(a);
                }
            }
            if !found.is_empty() {
                return least_of(found).map(Some);
            }
        }
        Ok(None)
    }
}

/// The candidates must form a chain-bottomed family whose intersection is
/// itself one of them.
fn least_of(found: Vec<Subset>) -> Result<Subset> {
    let meet = found.iter().fold(found[0], |a, &z| a.intersect(z));
    if found.contains(&meet) {
        Ok(meet)
    } else {
        Err(Error::Integrity(format!("minimum separations {found:?} have no least element")))
    }
}

/// Drop duplicates and sets contained in other avoid sets.
fn normalize_avoid(avoid: &[Subset]) -> Vec<Subset> {
    let mut v: Vec<Subset> = avoid.to_vec();
    v.sort();
    v.dedup();
    let keep: Vec<Subset> = v
        .iter()
        .copied()
        .filter(|&a| !v.iter().any(|&b| b != a && a.is_subset(b)))
        .collect();
    keep
}

/// Least member satisfying an up-closed predicate in a union- and
/// intersection-closed family, by repeatedly dropping one element and
/// jumping to the greatest member below.
pub(crate) fn minimal_in_lattice(members: &[Subset], pred: impl Fn(Subset) -> bool) -> Option<Subset> {
    let top_within = |w: Subset| -> Option<Subset> {
        let mut acc: Option<Subset> = None;
        for &z in members {
            if z.is_subset(w) {
                acc = Some(acc.map_or(z, |a| a.union(z)));
            }
        }
        acc
    };
    let top = members.iter().copied().reduce(Subset::union)?;
    if !pred(top) {
        return None;
    }
    let mut x = top;
    'outer: loop {
        for e in x.iter() {
            if let Some(c) = top_within(x.without(e)) {
                if pred(c) {
                    x = c;
                    continue 'outer;
                }
            }
        }
        return Some(x);
    }
}

/// Down-closed tables: `single[s]` iff `s` lies in a known decomposable
/// set, `pair[s]` iff `s` lies in the union of two.
struct CoverTables {
    single: Vec<bool>,
    pair: Vec<bool>,
    values: Vec<Subset>,
}

impl CoverTables {
    fn new(n: usize) -> CoverTables {
        let mut single = vec![false; 1 << n];
        let mut pair = vec![false; 1 << n];
        single[0] = true;
        pair[0] = true;
        CoverTables { single, pair, values: Vec::new() }
    }

    fn add(&mut self, d: Subset) {
        if self.single[d.0 as usize] {
            return;
        }
        mark_down(&mut self.single, d);
        self.values.retain(|v| !v.is_subset(d));
        mark_down(&mut self.pair, d);
        for i in 0..self.values.len() {
            let u = self.values[i].union(d);
            mark_down(&mut self.pair, u);
        }
        self.values.push(d);
    }
}

fn mark_down(table: &mut [bool], s: Subset) {
    if table[s.0 as usize] {
        return;
    }
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        if table[x.0 as usize] {
            continue;
        }
        table[x.0 as usize] = true;
        for e in x.iter() {
            let y = x.without(e);
            if !table[y.0 as usize] {
                stack.push(y);
            }
        }
    }
}

/// A tangle fixed by a list of committed members: the unique tangle of
/// order `pin_order` containing them, truncated to `order`.
#[derive(Clone)]
pub struct Tangle {
    engine: Arc<Engine>,
    order: u32,
    pin_order: u32,
    signature: Vec<Subset>,
}

impl fmt::Debug for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tangle")
            .field("order", &self.order)
            .field("pin_order", &self.pin_order)
            .field("signature", &self.signature)
            .finish()
    }
}

impl Tangle {
    /// The caller guarantees that exactly one tangle of order `order`
    /// contains every signature set.
    pub fn from_signature(engine: Arc<Engine>, order: u32, signature: Vec<Subset>) -> Tangle {
        Tangle { engine, order, pin_order: order, signature }
    }

    /// The unique tangle of order 0.
    pub fn empty(engine: Arc<Engine>) -> Tangle {
        Tangle::from_signature(engine, 0, Vec::new())
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn signature(&self) -> &[Subset] {
        &self.signature
    }

    /// Checked membership; sets of order `≥ order` are an error.
    pub fn membership(&self, x: Subset) -> Result<bool> {
        self.engine.oracle.ground().check(x)?;
        let v = self.engine.kappa(x);
        if v >= self.order {
            return Err(Error::OutOfOrder { set: x.to_string(), order: v, tangle_order: self.order });
        }
        self.decide(x)
    }

    fn decide(&self, x: Subset) -> Result<bool> {
        let full = self.engine.full();
        if x == full {
            return Ok(true);
        }
        if x.len() <= 1 {
            return Ok(false);
        }
        for &s in &self.signature {
            if s.is_subset(x) {
                return Ok(true);
            }
            if s.is_disjoint(x) {
                return Ok(false);
            }
        }
        let mut avoid: Vec<Subset> = self.signature.iter().map(|s| s.complement(full)).collect();
        avoid.push(x.complement(full));
        self.engine.exists_tangle_avoiding(None, &avoid, self.pin_order)
    }

    /// Restriction to sets of order `< l`; unchanged when `l ≥ order`.
    pub fn truncate(&self, l: u32) -> Tangle {
        let mut t = self.clone();
        t.order = self.order.min(l);
        t
    }
}

impl TangleMembership for Tangle {
    fn order(&self) -> u32 {
        self.order
    }

    fn contains(&self, x: Subset) -> bool {
        if self.engine.kappa(x) >= self.order {
            return false;
        }
        self.decide(x).expect("membership decision within guards")
    }
}

/// A tangle given by its full member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExplicitTangle {
    pub order: u32,
    /// Sorted by mask.
    pub members: Vec<Subset>,
}

impl ExplicitTangle {
    pub fn new(order: u32, mut members: Vec<Subset>) -> ExplicitTangle {
        members.sort();
        members.dedup();
        ExplicitTangle { order, members }
    }

    /// Restriction to sets of order `< l`.
    pub fn truncate(&self, k: &ConnectivityOracle, l: u32) -> ExplicitTangle {
        let l = l.min(self.order);
        ExplicitTangle::new(l, self.members.iter().copied().filter(|&x| k.value(x) < l).collect())
    }
}

impl TangleMembership for ExplicitTangle {
    fn order(&self) -> u32 {
        self.order
    }

    fn contains(&self, x: Subset) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TangleViolation {
    /// T0: a member of order `≥ k`.
    TooHighOrder { x: Subset, order: u32 },
    /// T1: neither `X` nor its complement is a member.
    Unoriented { x: Subset },
    /// T2: three members with empty intersection.
    EmptyTriple { a: Subset, b: Subset, c: Subset },
    /// T3: a singleton member.
    Singleton { x: Subset },
}

pub const AXIOM_CHECK_LIMIT: usize = 12;

/// Check the tangle axioms for an explicit family; `None` means it is a tangle of order `k`.
pub fn check_axioms(kf: &ConnectivityOracle, family: &[Subset], k: u32) -> Result<Option<TangleViolation>> {
    let n = kf.n();
    if n > AXIOM_CHECK_LIMIT {
        return Err(Error::SizeGuard { guard: "tangle-axioms", actual: n, limit: AXIOM_CHECK_LIMIT });
    }
    let full = kf.full();
    let mut member = vec![false; 1 << n];
    for &x in family {
        kf.ground().check(x)?;
        let v = kf.value(x);
        if v >= k {
            return Ok(Some(TangleViolation::TooHighOrder { x, order: v }));
        }
        member[x.0 as usize] = true;
    }
    for x in full.submasks() {
        if kf.value(x) < k && !member[x.0 as usize] && !member[x.complement(full).0 as usize] {
            return Ok(Some(TangleViolation::Unoriented { x }));
        }
    }
    // has_sub[s]: some member is a subset of s
    let mut has_sub = member.clone();
    for i in 0..n {
        for s in 0..1usize << n {
            if s >> i & 1 == 1 && has_sub[s ^ 1 << i] {
                has_sub[s] = true;
            }
        }
    }
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i..] {
            let rest = a.intersect(b).complement(full);
            if has_sub[rest.0 as usize] {
                let c = *family.iter().find(|c| c.is_subset(rest)).expect("table is exact");
                return Ok(Some(TangleViolation::EmptyTriple { a, b, c }));
            }
        }
    }
    if let Some(&x) = family.iter().find(|x| x.len() == 1) {
        return Ok(Some(TangleViolation::Singleton { x }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    fn engine(k: ConnectivityOracle) -> Arc<Engine> {
        Engine::new(Arc::new(k))
    }

    fn tri_tangle(e: &Arc<Engine>, i: usize) -> Tangle {
        Tangle::from_signature(Arc::clone(e), 2, vec![triangle(i)])
    }

    #[test]
    fn triforce_avoidance() {
        let e = engine(fixtures::triforce());
        let full = e.full();
        let top = Tangle::from_signature(Arc::clone(&e), 1, vec![]);
        let c = |i| triangle(i).complement(full);
        assert!(e.exists_tangle_avoiding(Some(&top), &[c(0)], 2).unwrap());
        assert!(!e.exists_tangle_avoiding(Some(&top), &[c(0), c(1), c(2)], 2).unwrap());
        assert!(e.exists_tangle_avoiding(None, &[], 0).unwrap());
        assert!(e.exists_tangle_avoiding(None, &[Subset::singleton(0)], 1).is_err());
    }

    #[test]
    fn tangle_orders() {
        assert!(!engine(fixtures::p3()).has_tangle_of_order(2).unwrap());
        assert!(engine(fixtures::k4()).has_tangle_of_order(3).unwrap());
        assert_eq!(engine(fixtures::p3()).max_tangle_order().unwrap(), 1);
        assert_eq!(engine(fixtures::k4()).max_tangle_order().unwrap(), 3);
        assert_eq!(engine(fixtures::c5_rank()).max_tangle_order().unwrap(), 2);
        assert_eq!(engine(fixtures::triforce()).max_tangle_order().unwrap(), 2);
    }

    #[test]
    fn membership_examples() {
        let e = engine(fixtures::triforce());
        let t = tri_tangle(&e, 0);
        assert!(t.membership(triangle(0)).unwrap());
        assert!(!t.membership(triangle(1)).unwrap());
        assert!(t.membership(triangle(1).complement(e.full())).unwrap());
        assert!(matches!(t.membership(Subset::singleton(0)), Err(Error::OutOfOrder { .. })));
        let one = Tangle::from_signature(Arc::clone(&e), 1, vec![]);
        assert!(one.membership(e.full()).unwrap());
        let tr = t.truncate(1);
        assert_eq!(tr.order(), 1);
        assert!(tr.membership(e.full()).unwrap());
        assert_eq!(t.truncate(5).order(), 2);
        assert_eq!(t.truncate(0).order(), 0);
    }

    #[test]
    fn minimal_members() {
        let e = engine(fixtures::triforce());
        let t = tri_tangle(&e, 0);
        let s = |x: Subset| t.contains(x);
        assert_eq!(e.minimal_member_in_box(&s, 2, Subset::EMPTY, e.full()).unwrap(), Some(triangle(0)));
        let outside = triangle(1).union(triangle(2));
        assert_eq!(e.minimal_member_in_box(&s, 2, Subset::EMPTY, outside).unwrap(), None);
        let one = Tangle::from_signature(Arc::clone(&e), 1, vec![]);
        let s1 = |x: Subset| one.contains(x);
        assert_eq!(e.minimal_member_in_box(&s1, 1, Subset::EMPTY, e.full()).unwrap(), Some(e.full()));
    }

    #[test]
    fn lattice_bottoms_and_separations() {
        let e = engine(fixtures::triforce());
        let t0 = tri_tangle(&e, 0);
        let b = Base { b1: Subset::singleton(0), b2: Subset::singleton(3), order: 1 };
        assert_eq!(e.tangle_lattice_bottom(&t0, &b).unwrap(), Some(triangle(0)));
        assert_eq!(e.tangle_lattice_bottom(&t0, &b.flipped()).unwrap(), None);
        let one = Tangle::from_signature(Arc::clone(&e), 1, vec![]);
        let b0 = Base { b1: Subset::EMPTY, b2: Subset::EMPTY, order: 0 };
        assert_eq!(e.tangle_lattice_bottom(&one, &b0).unwrap(), Some(e.full()));
        let t1 = tri_tangle(&e, 1);
        assert_eq!(e.leftmost_tangle_separation(&t0, &t1).unwrap(), Some(triangle(0)));
        assert_eq!(e.leftmost_tangle_separation(&t1, &t0).unwrap(), Some(triangle(1)));
        assert_eq!(e.leftmost_tangle_separation(&t0, &t0.truncate(1)).unwrap(), None);
    }

    #[test]
    fn explicit_axioms() {
        let k = fixtures::triforce();
        let full = k.full();
        assert_eq!(check_axioms(&k, &[full], 1).unwrap(), None);
        assert!(matches!(
            check_axioms(&k, &[full, Subset::EMPTY], 1).unwrap(),
            Some(TangleViolation::EmptyTriple { .. })
        ));
        let tri1: Vec<Subset> = full
            .submasks()
            .filter(|&x| k.value(x) < 2 && x.union(triangle(0)) == x || k.value(x) < 2 && x == triangle(0))
            .collect();
        assert_eq!(check_axioms(&k, &tri1, 2).unwrap(), None);
    }
}
