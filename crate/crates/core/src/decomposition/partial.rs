//! Partial and branch decompositions over cubic trees.

use std::collections::VecDeque;

use crate::connectivity::ConnectivityOracle;
use crate::error::{Error, Result};
use crate::subset::Subset;

use super::tree::tree_adjacency;

/// A cubic tree with a set `ξ̃(s, t)` on every oriented edge, where
/// `ξ̃(t, s)` is the complement of `ξ̃(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDecomposition {
    full: Subset,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    /// `ξ̃(a, b)` for `edges[i] = (a, b)`.
    xi: Vec<Subset>,
}

impl PartialDecomposition {
    /// `labels[i]` is `ξ̃(a, b)` for `edges[i] = (a, b)`.
    pub fn new(full: Subset, nodes: usize, edges: Vec<(usize, usize)>, labels: Vec<Subset>) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Domain("a partial decomposition needs at least two nodes".into()));
        }
        if labels.len() != edges.len() {
            return Err(Error::Domain("one label per edge is required".into()));
        }
        let adj = tree_adjacency(nodes, &edges)?;
        if let Some(v) = (0..nodes).find(|&v| adj[v].len() != 1 && adj[v].len() != 3) {
            return Err(Error::Domain(format!("node {v} has degree {}, not 1 or 3", adj[v].len())));
        }
        if let Some(x) = labels.iter().find(|x| !x.is_subset(full)) {
            return Err(Error::Domain(format!("label {x} leaves the ground set")));
        }
        let pd = PartialDecomposition { full, adj, edges, xi: labels };
        for s in 0..nodes {
            if pd.adj[s].len() == 3 {
                let cover = pd.adj[s].iter().fold(Subset::EMPTY, |a, &t| a.union(pd.label(s, t)));
                if cover != full {
                    return Err(Error::Domain(format!("sets at node {s} do not cover the ground set")));
                }
            }
        }
        Ok(pd)
    }

    /// The decomposition whose leaves carry `leaf_sets`; every other label is
    /// the union of the leaf sets beyond the edge, so the result is exact
    /// when the leaf sets partition the ground set.
    pub fn from_leaf_sets(
        full: Subset,
        nodes: usize,
        edges: Vec<(usize, usize)>,
        leaf_sets: &[(usize, Subset)],
    ) -> Result<Self> {
        let adj = tree_adjacency(nodes, &edges)?;
        let mut at = vec![Subset::EMPTY; nodes];
        for &(u, x) in leaf_sets {
            if u >= nodes || adj[u].len() != 1 {
                return Err(Error::Domain(format!("node {u} is not a leaf")));
            }
            at[u] = x;
        }
        let labels = edges.iter().map(|&(a, b)| beyond(&adj, &at, a, b)).collect();
        PartialDecomposition::new(full, nodes, edges, labels)
    }

    pub fn full(&self) -> Subset {
        self.full
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `ξ̃(s, t)`.
    pub fn label(&self, s: usize, t: usize) -> Subset {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if (a, b) == (s, t) {
                return self.xi[i];
            }
            if (a, b) == (t, s) {
                return self.xi[i].complement(self.full);
            }
        }
        panic!("({s}, {t}) is not an edge");
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes()).filter(|&v| self.adj[v].len() == 1).collect()
    }

    /// `ξ(u) = ξ̃(t, u)` for the leaf `u` with neighbour `t`.
    pub fn leaf_set(&self, u: usize) -> Subset {
        self.label(self.adj[u][0], u)
    }

    /// Largest `κ(ξ̃(s, t))` over all edges.
    pub fn width(&self, k: &ConnectivityOracle) -> u32 {
        self.xi.iter().map(|&x| k.value(x)).max().unwrap_or(0)
    }

    /// At every internal node the three outgoing sets are mutually disjoint.
    pub fn is_exact(&self) -> bool {
        (0..self.nodes()).filter(|&s| self.adj[s].len() == 3).all(|s| {
            let sets: Vec<Subset> = self.adj[s].iter().map(|&t| self.label(s, t)).collect();
            sets[0].is_disjoint(sets[1]) && sets[0].is_disjoint(sets[2]) && sets[1].is_disjoint(sets[2])
        })
    }

    /// Whether every leaf set is a singleton and the decomposition is exact.
    pub fn is_branch_decomposition(&self) -> bool {
        self.is_exact() && self.leaves().iter().all(|&u| self.leaf_set(u).len() == 1)
    }
}

fn beyond(adj: &[Vec<usize>], at: &[Subset], s: usize, t: usize) -> Subset {
    let mut acc = Subset::EMPTY;
    let mut stack = vec![(t, s)];
    while let Some((v, from)) = stack.pop() {
        acc = acc.union(at[v]);
        stack.extend(adj[v].iter().filter(|&&w| w != from).map(|&w| (w, v)));
    }
    acc
}

/// An exact partial decomposition on the same tree in which no edge has
/// larger order and no leaf set grows.
///
/// Subdivides the first edge, pushes the labels onto the nodes of the
/// resulting rooted binary tree and repairs the first non-exact node in
/// breadth-first order until none is left.
pub fn exactify(k: &ConnectivityOracle, pd: &PartialDecomposition) -> Result<PartialDecomposition> {
    let n = pd.nodes();
    let root = n;
    let (sb, tb) = pd.edges[0];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    let mut xi = vec![Subset::EMPTY; n + 1];
    xi[root] = pd.full;
    children[root] = vec![sb, tb];
    parent[sb] = root;
    parent[tb] = root;
    xi[sb] = pd.label(tb, sb);
    xi[tb] = pd.label(sb, tb);
    let mut stack = vec![(sb, tb), (tb, sb)];
    while let Some((v, from)) = stack.pop() {
        for &w in &pd.adj[v] {
            if w != from {
                children[v].push(w);
                parent[w] = v;
                xi[w] = pd.label(v, w);
                stack.push((w, v));
            }
        }
    }
    let mut order = Vec::with_capacity(n + 1);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        queue.extend(children[v].iter().copied());
    }

    loop {
        let bad = order.iter().copied().find(|&s| {
            let c = &children[s];
            c.len() == 2 && (xi[c[0]].union(xi[c[1]]) != xi[s] || !xi[c[0]].is_disjoint(xi[c[1]]))
        });
        let Some(s) = bad else { break };
        let (t1, t2) = (children[s][0], children[s][1]);
        let (x, y1, y2) = (xi[s], xi[t1], xi[t2]);
        if x != y1.union(y2) {
            if k.value(x.intersect(y1)) <= k.value(y1) && k.value(x.intersect(y2)) <= k.value(y2) {
                xi[t1] = x.intersect(y1);
                xi[t2] = x.intersect(y2);
            } else {
                let grown = if k.value(x.union(y1)) < k.value(x) { x.union(y1) } else { x.union(y2) };
                if k.value(grown) >= k.value(x) {
                    return Err(Error::Integrity("submodularity fails while making a decomposition exact".into()));
                }
                xi[s] = grown;
            }
        } else if k.value(y1.minus(y2)) <= k.value(y1) {
            xi[t1] = y1.minus(y2);
        } else if k.value(y2.minus(y1)) <= k.value(y2) {
            xi[t2] = y2.minus(y1);
        } else {
            return Err(Error::Integrity("posimodularity fails while making a decomposition exact".into()));
        }
    }

    let labels = pd
        .edges
        .iter()
        .map(|&(a, b)| {
            if (a, b) == (sb, tb) {
                xi[tb]
            } else if parent[b] == a {
                xi[b]
            } else {
                xi[a].complement(pd.full)
            }
        })
        .collect();
    PartialDecomposition::new(pd.full, n, pd.edges.clone(), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    /// Cubic tree with internal nodes 0, 1 and leaves 2..6.
    fn four_leaves(full: Subset, leaves: [Subset; 4]) -> PartialDecomposition {
        let edges = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)];
        let sets: Vec<(usize, Subset)> = (2..6).zip(leaves).collect();
        PartialDecomposition::from_leaf_sets(full, 6, edges, &sets).unwrap()
    }

    #[test]
    fn widths() {
        let p3 = fixtures::p3();
        let pd = PartialDecomposition::new(p3.full(), 2, vec![(0, 1)], vec![Subset::singleton(0)]).unwrap();
        assert_eq!(pd.width(&p3), 1);
        assert!(pd.is_branch_decomposition());
        let k = fixtures::triforce();
        let x = Subset::singleton(4);
        let pd = PartialDecomposition::new(k.full(), 2, vec![(1, 0)], vec![x]).unwrap();
        assert_eq!(pd.width(&k), k.value(x));
    }

    #[test]
    fn exact_input_unchanged() {
        let k = fixtures::triforce();
        let full = k.full();
        let rest = full.minus(triangle(0).union(triangle(1)).union(triangle(2)));
        assert!(rest.is_empty());
        let pd = four_leaves(full, [triangle(0), triangle(1), Subset::from_ids([6, 7]), Subset::singleton(8)]);
        assert!(pd.is_exact());
        assert_eq!(exactify(&k, &pd).unwrap(), pd);
    }

    #[test]
    fn overlap_removed() {
        let k = fixtures::triforce();
        let full = k.full();
        let grown = triangle(0).with(3);
        let pd = four_leaves(full, [grown, triangle(1), triangle(2), Subset::EMPTY]);
        assert!(!pd.is_exact());
        let ex = exactify(&k, &pd).unwrap();
        assert!(ex.is_exact());
        assert!(ex.width(&k) <= pd.width(&k));
        for u in pd.leaves() {
            assert!(ex.leaf_set(u).is_subset(pd.leaf_set(u)));
        }
    }

    #[test]
    fn rejects_non_cubic() {
        let full = Subset::full(3);
        let e = vec![(0, 1), (1, 2)];
        assert!(PartialDecomposition::new(full, 3, e, vec![Subset::EMPTY; 2]).is_err());
    }
}
