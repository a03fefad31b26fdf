//! Directed tree decompositions rooted at a chosen maximal tangle.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::tangle_ds::TangleDataStructure;
use crate::tangles::Engine;

use super::canonical::{canonical_from_ds, TangleTreeDecomposition};
use super::tree::TreeDecomposition;
use super::verify::verify_directed;

/// A rooted tree with a cone `γ(t)` and one tangle per node.
#[derive(Clone, Debug)]
pub struct DirectedTreeDecomposition {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub cones: Vec<Subset>,
    /// Tangle index at each node.
    pub tangles: Vec<usize>,
    pub order: u32,
    ds: TangleDataStructure,
}

impl DirectedTreeDecomposition {
    pub fn new(
        parent: Vec<Option<usize>>,
        cones: Vec<Subset>,
        tangles: Vec<usize>,
        order: u32,
        ds: TangleDataStructure,
    ) -> Result<DirectedTreeDecomposition> {
        let n = parent.len();
        if n == 0 || cones.len() != n || tangles.len() != n {
            return Err(Error::Domain("parents, cones and tangles must have one entry per node".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::Domain(format!("{} roots", roots.len())));
        }
        let root = roots[0];
        for v in 0..n {
            let mut w = v;
            let mut steps = 0;
            while let Some(p) = parent[w] {
                if p >= n || steps > n {
                    return Err(Error::Domain("parent pointers do not form a rooted tree".into()));
                }
                w = p;
                steps += 1;
            }
        }
        Ok(DirectedTreeDecomposition { root, parent, cones, tangles, order, ds })
    }

    pub fn ds(&self) -> &TangleDataStructure {
        &self.ds
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.parent[u] == Some(t)).collect()
    }

    /// `β(t) = γ(t)` minus the cones of the children.
    pub fn bag(&self, t: usize) -> Subset {
        self.children(t).iter().fold(self.cones[t], |a, &u| a.minus(self.cones[u]))
    }

    /// `a ⊴ b`: `a` is `b` or one of its ancestors.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut w = Some(b);
        while let Some(v) = w {
            if v == a {
                return true;
            }
            w = self.parent[v];
        }
        false
    }

    /// The underlying undirected tree decomposition.
    pub fn to_tree_decomposition(&self) -> Result<TreeDecomposition> {
        let full = self.cones[self.root];
        let bags = (0..self.len()).map(|t| self.bag(t)).collect();
        let edges: Vec<(usize, usize)> =
            (0..self.len()).filter_map(|v| self.parent[v].map(|p| (p, v))).collect();
        TreeDecomposition::new(full, bags, &edges)
    }

    /// Invariant of the rooted tree with cones mapped by `map`.
    pub fn rooted_form(&self, map: &dyn Fn(Subset) -> Subset, tangle_label: &dyn Fn(usize) -> String) -> String {
        let mut adj = vec![Vec::new(); self.len()];
        for v in 0..self.len() {
            if let Some(p) = self.parent[v] {
                adj[p].push(v);
                adj[v].push(p);
            }
        }
        fn enc(adj: &[Vec<usize>], v: usize, from: Option<usize>, label: &dyn Fn(usize) -> String) -> String {
            let mut kids: Vec<String> =
                adj[v].iter().filter(|&&w| Some(w) != from).map(|&w| enc(adj, w, Some(v), label)).collect();
            kids.sort();
            format!("({}{})", label(v), kids.concat())
        }
        let label = |v: usize| format!("{:x}:t{}", map(self.cones[v]).bits(), tangle_label(self.tangles[v]));
        enc(&adj, self.root, None, &label)
    }
}

/// Directed decomposition for the maximal tangles of order at most `l`
/// whose root carries the tangle `root_tangle`.
pub fn directed_decomposition(engine: &Arc<Engine>, l: u32, root_tangle: usize) -> Result<DirectedTreeDecomposition> {
    let ds = TangleDataStructure::build(Arc::clone(engine), l)?;
    let ttd = canonical_from_ds(&ds, l)?;
    directed_from(&ttd, root_tangle)
}

/// The directed decomposition built on top of a canonical decomposition.
pub fn directed_from(ttd: &TangleTreeDecomposition, root_tangle: usize) -> Result<DirectedTreeDecomposition> {
    let ds = ttd.ds();
    let engine = ds.engine();
    let full = engine.full();
    let r = ttd
        .node_of(root_tangle)
        .ok_or_else(|| Error::Domain(format!("tangle {root_tangle} is not maximal of order at most {}", ttd.order)))?;
    let td = &ttd.tree;
    let up = td.parents_from(r);

    // nodes of the new tree: tangle nodes, numbered in tau order
    let nodes: Vec<usize> = ttd.tau.iter().map(|&(_, v)| v).collect();
    let index_of = |v: usize| nodes.iter().position(|&w| w == v);
    let n = nodes.len();
    let root = index_of(r).expect("root is a tangle node");
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in nodes.iter().enumerate() {
        if v == r {
            continue;
        }
        let mut w = up[v].expect("non-root has a parent");
        while index_of(w).is_none() {
            w = up[w].expect("the root is a tangle node");
        }
        parent[i] = index_of(w);
    }

    let mut cones = vec![full; n];
    for (i, &v) in nodes.iter().enumerate() {
        if v != r {
            let outer = td.side(up[v].expect("non-root"), v);
            let t = ds.tangle(ttd.tau[i].0)?;
            cones[i] = engine
                .leftmost_member_within(&t, outer)?
                .ok_or_else(|| Error::Integrity(format!("no member of tangle {} inside its subtree", ttd.tau[i].0)))?;
        }
    }

    loop {
        let bad: Vec<usize> = (0..n)
            .filter(|&u| parent[u].is_some_and(|p| !cones[u].is_subset(cones[p])))
            .collect();
        if bad.is_empty() {
            break;
        }
        let deepest: Vec<usize> = bad
            .iter()
            .copied()
            .filter(|&u| !bad.iter().any(|&w| w != u && is_ancestor(&parent, u, w)))
            .collect();
        let moves: Vec<(usize, usize)> = deepest
            .iter()
            .map(|&u| {
                let mut s = parent[u].expect("bad nodes have parents");
                while !cones[u].is_subset(cones[s]) {
                    s = parent[s].expect("the root cone is everything");
                }
                (u, s)
            })
            .collect();
        for (u, s) in moves {
            parent[u] = Some(s);
        }
    }

    let tangles: Vec<usize> = ttd.tau.iter().map(|&(i, _)| i).collect();
    let dtd = DirectedTreeDecomposition::new(parent, cones, tangles, ttd.order, ds.clone())?;
    debug_assert_eq!(dtd.root, root);
    let report = verify_directed(&dtd)?;
    if !report.passed() {
        return Err(Error::Integrity(format!("directed decomposition fails its checks: {report}")));
    }
    Ok(dtd)
}

fn is_ancestor(parent: &[Option<usize>], a: usize, b: usize) -> bool {
    let mut w = Some(b);
    while let Some(v) = w {
        if v == a {
            return true;
        }
        w = parent[v];
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    #[test]
    fn triforce_rooted_at_each_triangle() {
        let k = Arc::new(fixtures::triforce());
        let engine = Engine::new(Arc::clone(&k));
        let ds = TangleDataStructure::build(Arc::clone(&engine), 2).unwrap();
        for r in ds.indices_of_order(2) {
            let d = directed_decomposition(&engine, 2, r).unwrap();
            assert_eq!(d.len(), 3);
            assert_eq!(d.cones[d.root], k.full());
            let own = (0..3).find(|&i| ds.membership(r, triangle(i)).unwrap()).unwrap();
            assert_eq!(d.bag(d.root), triangle(own));
            let mut kids: Vec<Subset> = d.children(d.root).iter().map(|&c| d.cones[c]).collect();
            kids.sort();
            let want: Vec<Subset> = (0..3).filter(|&i| i != own).map(triangle).collect();
            assert_eq!(kids, want);
        }
    }

    #[test]
    fn single_tangle() {
        let engine = Engine::new(Arc::new(fixtures::k4()));
        let ds = TangleDataStructure::build(Arc::clone(&engine), 3).unwrap();
        let top = ds.indices_of_order(3).next().unwrap();
        let d = directed_decomposition(&engine, 3, top).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.cones[0], engine.full());
        assert!(directed_decomposition(&engine, 3, 0).is_err());
    }
}
