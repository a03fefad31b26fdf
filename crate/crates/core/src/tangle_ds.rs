//! Indexed registry of every tangle of order at most `k`.
//!
//! Level `ℓ` holds a binary distinction tree whose root-to-leaf separator
//! lists each pin down exactly one tangle of order `ℓ`. Indices are global:
//! the empty tangle is `0`, then the order-1 tangles, and so on. The
//! numbering depends on element ids and is not canonical.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::tangles::{minimal_in_lattice, Engine, Tangle, TangleMembership};

pub const DS_FORMAT: &str = "tanglekit-ds";
pub const DS_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtNode {
    /// `(child, S(self, child))` for both children of an inner node.
    pub children: Option<[(usize, Subset); 2]>,
    pub parent: Option<usize>,
    /// Leaf number within the level.
    pub leaf: Option<usize>,
}

/// Rooted binary tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctionTree {
    pub nodes: Vec<DtNode>,
    /// Node id of each leaf, by leaf number.
    pub leaves: Vec<usize>,
}

impl DistinctionTree {
    /// Separators on the root-to-node path.
    pub fn path(&self, mut node: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        while let Some(p) = self.nodes[node].parent {
            let [a, b] = self.nodes[p].children.expect("parent has children");
            out.push(if a.0 == node { a.1 } else { b.1 });
            node = p;
        }
        out.reverse();
        out
    }

    fn depth(&self, mut node: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.nodes[node].parent {
            node = p;
            d += 1;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub order: u32,
    pub offset: usize,
    pub count: usize,
    pub tree: Option<DistinctionTree>,
}

#[derive(Clone)]
pub struct TangleDataStructure {
    engine: Arc<Engine>,
    k: u32,
    levels: Arc<Vec<Level>>,
}

impl std::fmt::Debug for TangleDataStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TangleDataStructure").field("k", &self.k).field("levels", &self.levels()).finish()
    }
}

impl TangleDataStructure {
    pub fn build(engine: Arc<Engine>, k: u32) -> Result<TangleDataStructure> {
        let mut levels = vec![Level { order: 0, offset: 0, count: 1, tree: None }];
        let mut offset = 1;
        let mut exhausted = false;
        for ord in 1..=k {
            let tree = if exhausted || !engine.has_tangle_of_order(ord)? {
                exhausted = true;
                None
            } else {
                Some(grow(&engine, ord)?)
            };
            let count = tree.as_ref().map_or(0, |t| t.leaves.len());
            levels.push(Level { order: ord, offset, count, tree });
            offset += count;
        }
        Ok(TangleDataStructure { engine, k, levels: Arc::new(levels) })
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels[..=self.k as usize]
    }

    /// The structure of order `k - 1`, sharing storage.
    pub fn lower(&self) -> Option<TangleDataStructure> {
        (self.k > 0).then(|| TangleDataStructure {
            engine: Arc::clone(&self.engine),
            k: self.k - 1,
            levels: Arc::clone(&self.levels),
        })
    }

    /// Number of tangles of order at most `l`.
    pub fn size(&self, l: u32) -> usize {
        let l = l.min(self.k) as usize;
        let lv = &self.levels[l];
        lv.offset + lv.count
    }

    pub fn len(&self) -> usize {
        self.size(self.k)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i, size: self.len() });
        }
        Ok(())
    }

    pub fn order(&self, i: usize) -> Result<u32> {
        self.check_index(i)?;
        Ok(self.levels().iter().rev().find(|lv| i >= lv.offset && lv.count > 0).map_or(0, |lv| lv.order))
    }

    /// Indices of the tangles of exactly order `l`.
    pub fn indices_of_order(&self, l: u32) -> std::ops::Range<usize> {
        if l > self.k {
            return 0..0;
        }
        let lv = &self.levels[l as usize];
        lv.offset..lv.offset + lv.count
    }

    fn leaf_path(&self, i: usize) -> Result<(u32, Vec<Subset>)> {
        let ord = self.order(i)?;
        let lv = &self.levels[ord as usize];
        Ok(match &lv.tree {
            None => (ord, Vec::new()),
            Some(t) => (ord, t.path(t.leaves[i - lv.offset])),
        })
    }

    /// Tangle `i` as a signature-backed object.
    pub fn tangle(&self, i: usize) -> Result<Tangle> {
        let (ord, path) = self.leaf_path(i)?;
        Ok(Tangle::from_signature(Arc::clone(&self.engine), ord, path))
    }

    pub fn membership(&self, i: usize, x: Subset) -> Result<bool> {
        self.tangle(i)?.membership(x)
    }

    /// Index of the truncation of tangle `i` to order `l`.
    pub fn truncation(&self, i: usize, l: u32) -> Result<usize> {
        let ord = self.order(i)?;
        if l >= ord {
            return Ok(i);
        }
        let t = self.tangle(i)?.truncate(l);
        self.find(l, &t)
    }

    /// Indices of the tangles that are inclusion-maximal among those of
    /// order at most `l`, ascending.
    pub fn maximal(&self, l: u32) -> Result<Vec<usize>> {
        let l = l.min(self.k);
        let mut out = Vec::new();
        for o in 0..=l {
            let here = self.indices_of_order(o);
            if o == l {
                out.extend(here);
                break;
            }
            let mut covered = vec![false; here.len()];
            for j in self.indices_of_order(o + 1) {
                covered[self.truncation(j, o)? - here.start] = true;
            }
            out.extend(here.zip(covered).filter(|(_, c)| !c).map(|(i, _)| i));
        }
        Ok(out)
    }

    /// Index of the tangle of order `l` described by `oracle`.
    pub fn find(&self, l: u32, oracle: &dyn TangleMembership) -> Result<usize> {
        if l > self.k {
            return Err(Error::Domain(format!("order {l} exceeds the structure order {}", self.k)));
        }
        let lv = &self.levels[l as usize];
        if lv.count == 0 {
            return Err(Error::Integrity(format!("there is no tangle of order {l}")));
        }
        let Some(tree) = &lv.tree else {
            return Ok(lv.offset);
        };
        let mut node = 0;
        while let Some([(a, sa), (b, sb)]) = tree.nodes[node].children {
            node = match (oracle.contains(sa), oracle.contains(sb)) {
                (true, false) => a,
                (false, true) => b,
                _ => {
                    return Err(Error::Integrity(format!(
                        "oracle does not orient the separator {sa} as a tangle would"
                    )))
                }
            };
        }
        Ok(lv.offset + tree.nodes[node].leaf.expect("leaf"))
    }

    /// Leftmost minimum `(T_i, T_j)`-separation; `None` if one tangle
    /// truncates the other.
    pub fn separation(&self, i: usize, j: usize) -> Result<Option<Subset>> {
        if i == j {
            return Err(Error::Domain("separation of a tangle from itself".into()));
        }
        let (oi, oj) = (self.order(i)?, self.order(j)?);
        if oi < oj && self.truncation(j, oi)? == i || oj < oi && self.truncation(i, oj)? == j {
            return Ok(None);
        }
        let (ti, tj) = (self.tangle(i)?, self.tangle(j)?);
        self.engine.leftmost_tangle_separation(&ti, &tj)
    }

    /// The tree-based separation: the separator at the lowest common
    /// ancestor of two same-order leaves, shrunk to an inclusion-minimal
    /// member of `T_i`. For tangles of order at least 3 this can miss the
    /// minimum order; [`separation`](Self::separation) is authoritative.
    pub fn separation_via_tree(&self, i: usize, j: usize) -> Result<Option<Subset>> {
        let (oi, oj) = (self.order(i)?, self.order(j)?);
        if oi != oj || i == j {
            return Err(Error::Domain("tree separation needs two distinct tangles of one order".into()));
        }
        let lv = &self.levels[oi as usize];
        let Some(tree) = &lv.tree else { return Ok(None) };
        let (mut a, mut b) = (tree.leaves[i - lv.offset], tree.leaves[j - lv.offset]);
        let (mut da, mut db) = (tree.depth(a), tree.depth(b));
        let mut below_a = a;
        while da > db {
            below_a = a;
            a = tree.nodes[a].parent.expect("deeper");
            da -= 1;
        }
        while db > da {
            b = tree.nodes[b].parent.expect("deeper");
            db -= 1;
        }
        while a != b {
            below_a = a;
            a = tree.nodes[a].parent.expect("common root");
            b = tree.nodes[b].parent.expect("common root");
        }
        let [(c1, s1), (_, s2)] = tree.nodes[a].children.expect("inner node");
        let x = if c1 == below_a { s1 } else { s2 };
        let ti = self.tangle(i)?;
        let s = |z: Subset| ti.contains(z);
        self.engine.minimal_member_in_box(&s, oi, Subset::EMPTY, x)
    }

    /// Whether some set has order exactly `j`.
    pub fn has_separation_of_order(&self, j: u32) -> Result<bool> {
        Ok(self.engine.catalog(j)?.of_order(j).next().is_some())
    }

    pub fn to_json(&self) -> String {
        let doc = DsDocument {
            format: DS_FORMAT.into(),
            version: DS_VERSION,
            n: self.engine.oracle().n(),
            k: self.k,
            levels: self.levels().to_vec(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Rebuild from [`to_json`](Self::to_json) output for the same oracle.
    pub fn from_json(engine: Arc<Engine>, text: &str) -> Result<TangleDataStructure> {
        let doc: DsDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        if doc.format != DS_FORMAT || doc.version != DS_VERSION {
            return Err(Error::Unsupported(format!("document {} version {}", doc.format, doc.version)));
        }
        if doc.n != engine.oracle().n() || doc.levels.len() != doc.k as usize + 1 {
            return Err(Error::Domain("document does not match the instance".into()));
        }
        Ok(TangleDataStructure { engine, k: doc.k, levels: Arc::new(doc.levels) })
    }
}

#[derive(Serialize, Deserialize)]
struct DsDocument {
    format: String,
    version: u32,
    n: usize,
    k: u32,
    levels: Vec<Level>,
}

/// Grow the distinction tree of order `ord` by splitting leaves until each
/// holds a single tangle.
fn grow(engine: &Arc<Engine>, ord: u32) -> Result<DistinctionTree> {
    let full = engine.full();
    let cat = engine.catalog(ord - 1)?;
    let mut nodes = vec![DtNode { children: None, parent: None, leaf: None }];
    let mut paths: Vec<Vec<Subset>> = vec![Vec::new()];
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        let base_avoid: Vec<Subset> = paths[u].iter().map(|p| p.complement(full)).collect();
        let at_leaf = |x: Subset| -> bool {
            let mut avoid = base_avoid.clone();
            avoid.push(x.complement(full));
            engine
                .exists_tangle_avoiding(None, &avoid, ord)
                .expect("separators stay below the level order")
        };
        let mut split = None;
        for e in &cat.entries {
            if !at_leaf(e.top) || !at_leaf(e.bottom.complement(full)) {
                continue;
            }
            let Some(x) = minimal_in_lattice(&e.members, at_leaf) else { continue };
            if at_leaf(x.complement(full)) {
                split = Some(x);
                break;
            }
        }
        if let Some(x) = split {
            let (a, b) = (nodes.len(), nodes.len() + 1);
            let xc = x.complement(full);
            nodes[u].children = Some([(a, x), (b, xc)]);
            for (c, s) in [(a, x), (b, xc)] {
                nodes.push(DtNode { children: None, parent: Some(u), leaf: None });
                let mut p = paths[u].clone();
                p.push(s);
                paths.push(p);
                debug_assert_eq!(paths.len(), c + 1);
            }
            // left subtree first
            stack.push(b);
            stack.push(a);
        }
    }
    let mut leaves = Vec::new();
    let mut order = vec![0usize];
    while let Some(u) = order.pop() {
        match nodes[u].children {
            Some([(a, _), (b, _)]) => {
                order.push(b);
                order.push(a);
            }
            None => {
                nodes[u].leaf = Some(leaves.len());
                leaves.push(u);
            }
        }
    }
    Ok(DistinctionTree { nodes, leaves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    fn ds(k: crate::ConnectivityOracle, order: u32) -> TangleDataStructure {
        TangleDataStructure::build(Engine::new(Arc::new(k)), order).unwrap()
    }

    fn tri_index(d: &TangleDataStructure, t: usize) -> usize {
        d.indices_of_order(2).find(|&i| d.membership(i, triangle(t)).unwrap()).unwrap()
    }

    #[test]
    fn triforce_sizes() {
        let d = ds(fixtures::triforce(), 2);
        assert_eq!((d.size(0), d.size(1), d.size(2)), (1, 2, 5));
        assert_eq!(d.order(0).unwrap(), 0);
        assert_eq!(d.order(1).unwrap(), 1);
        assert_eq!(d.order(4).unwrap(), 2);
        assert!(d.order(5).is_err());
    }

    #[test]
    fn p3_and_trivial() {
        let d = ds(fixtures::p3(), 2);
        assert_eq!((d.size(1), d.size(2)), (2, 2));
        assert!(d.levels()[2].tree.is_none());
        let d0 = ds(fixtures::k4(), 0);
        assert_eq!(d0.size(0), 1);
    }

    #[test]
    fn triforce_queries() {
        let d = ds(fixtures::triforce(), 2);
        let full = d.engine().full();
        let t: Vec<usize> = (0..3).map(|i| tri_index(&d, i)).collect();
        assert!(d.membership(1, full).unwrap());
        assert!(matches!(d.membership(t[0], Subset::singleton(0)), Err(Error::OutOfOrder { .. })));
        for (i, &ti) in t.iter().enumerate() {
            assert_eq!(d.truncation(ti, 1).unwrap(), 1);
            assert_eq!(d.truncation(ti, 0).unwrap(), 0);
            assert_eq!(d.truncation(ti, 2).unwrap(), ti);
            let tg = d.tangle(ti).unwrap();
            assert_eq!(d.find(2, &tg).unwrap(), ti);
            for (j, &tj) in t.iter().enumerate() {
                if i != j {
                    assert_eq!(d.separation(ti, tj).unwrap(), Some(triangle(i)));
                    assert_eq!(d.separation_via_tree(ti, tj).unwrap(), Some(triangle(i)));
                }
            }
            assert_eq!(d.separation(ti, 1).unwrap(), None);
        }
        assert!(d.separation(1, 1).is_err());
        assert_eq!(d.find(0, &d.tangle(0).unwrap()).unwrap(), 0);
        assert_eq!(d.find(1, &d.tangle(1).unwrap()).unwrap(), 1);
        assert!(d.has_separation_of_order(1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = ds(fixtures::triforce(), 2);
        let text = d.to_json();
        let back = TangleDataStructure::from_json(Arc::clone(d.engine()), &text).unwrap();
        assert_eq!(back.levels(), d.levels());
        assert!(TangleDataStructure::from_json(Engine::new(Arc::new(fixtures::k4())), &text).is_err());
    }
}
