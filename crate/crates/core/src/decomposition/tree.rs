//! Tree decompositions and nested families of separations.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A tree with mutually disjoint bags covering the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    full: Subset,
    bags: Vec<Subset>,
    adj: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    pub fn new(full: Subset, bags: Vec<Subset>, edges: &[(usize, usize)]) -> Result<TreeDecomposition> {
        let adj = tree_adjacency(bags.len(), edges)?;
        let mut seen = Subset::EMPTY;
        for &b in &bags {
            if !b.is_subset(full) || !b.is_disjoint(seen) {
                return Err(Error::Domain(format!("bag {b} overlaps another bag or leaves the ground set")));
            }
            seen = seen.union(b);
        }
        if seen != full {
            return Err(Error::Domain("bags do not cover the ground set".into()));
        }
        Ok(TreeDecomposition { full, bags, adj })
    }

    /// One node holding everything.
    pub fn single(full: Subset) -> TreeDecomposition {
        TreeDecomposition { full, bags: vec![full], adj: vec![Vec::new()] }
    }

    pub fn full(&self) -> Subset {
        self.full
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, t: usize) -> Subset {
        self.bags[t]
    }

    pub fn bags(&self) -> &[Subset] {
        &self.bags
    }

    pub fn neighbors(&self, t: usize) -> &[usize] {
        &self.adj[t]
    }

    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        e.sort();
        e
    }

    /// `β̃(s, t)`: the union of the bags on `t`'s side of the edge `st`.
    pub fn side(&self, s: usize, t: usize) -> Subset {
        debug_assert!(self.adj[s].contains(&t));
        let mut acc = Subset::EMPTY;
        let mut stack = vec![(t, s)];
        while let Some((v, from)) = stack.pop() {
            acc = acc.union(self.bags[v]);
            stack.extend(self.adj[v].iter().filter(|&&w| w != from).map(|&w| (w, v)));
        }
        acc
    }

    /// `N(T, β)`: every `β̃(s, t)` over oriented edges, sorted and deduplicated.
    pub fn separations(&self) -> Vec<Subset> {
        let set: BTreeSet<Subset> = self
            .edges()
            .into_iter()
            .flat_map(|(a, b)| [self.side(a, b), self.side(b, a)])
            .collect();
        set.into_iter().collect()
    }

    /// Node sequence from `a` to `b`.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let parent = self.parents_from(b);
        let mut out = vec![a];
        let mut v = a;
        while v != b {
            v = parent[v].expect("tree is connected");
            out.push(v);
        }
        out
    }

    /// Parent pointers of the tree rooted at `root`.
    pub fn parents_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.len()];
        let mut stack = vec![root];
        let mut seen = vec![false; self.len()];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        parent
    }

    /// Contract every empty-bag node not marked by `keep` into its
    /// lowest-id neighbour. The result depends on node ids, so it is not
    /// canonical; use it for presentation only. Returns the new tree and
    /// the old-to-new node map.
    pub fn prune_empty_bags(&self, keep: &dyn Fn(usize) -> bool) -> (TreeDecomposition, Vec<usize>) {
        let n = self.len();
        let mut adj: Vec<BTreeSet<usize>> = self.adj.iter().map(|a| a.iter().copied().collect()).collect();
        let mut into: Vec<usize> = (0..n).collect();
        let mut alive = n;
        for v in 0..n {
            if alive == 1 || !self.bags[v].is_empty() || keep(v) {
                continue;
            }
            let Some(&w) = adj[v].first() else { continue };
            for u in std::mem::take(&mut adj[v]) {
                adj[u].remove(&v);
                if u != w {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
            }
            into[v] = w;
            alive -= 1;
        }
        let mut id = vec![usize::MAX; n];
        let mut bags = Vec::with_capacity(alive);
        for v in (0..n).filter(|&v| into[v] == v) {
            id[v] = bags.len();
            bags.push(self.bags[v]);
        }
        let map: Vec<usize> = (0..n)
            .map(|mut v| {
                while into[v] != v {
                    v = into[v];
                }
                id[v]
            })
            .collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .filter(|&v| into[v] == v)
            .flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)).collect::<Vec<_>>())
            .map(|(a, b)| (id[a], id[b]))
            .collect();
        let td = TreeDecomposition::new(self.full, bags, &edges).expect("contraction keeps a tree");
        (td, map)
    }

    /// An isomorphism invariant of the labelled tree: equal strings iff
    /// there is a label-preserving isomorphism.
    pub fn canonical_form(&self, label: &dyn Fn(usize) -> String) -> String {
        tree_centers(&self.adj)
            .into_iter()
            .map(|c| encode(&self.adj, c, None, label))
            .min()
            .unwrap_or_default()
    }

    /// Same invariant for the tree rooted at `root`.
    pub fn rooted_form(&self, root: usize, label: &dyn Fn(usize) -> String) -> String {
        encode(&self.adj, root, None, label)
    }
}

pub(crate) fn tree_adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::Domain("a tree needs at least one node".into()));
    }
    if edges.len() + 1 != n {
        return Err(Error::Domain(format!("{n} nodes and {} edges do not form a tree", edges.len())));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::Domain(format!("bad edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Domain("edges do not connect all nodes".into()));
    }
    for a in &mut adj {
        a.sort();
    }
    Ok(adj)
}

fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

fn encode(adj: &[Vec<usize>], v: usize, parent: Option<usize>, label: &dyn Fn(usize) -> String) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| encode(adj, w, Some(v), label))
        .collect();
    kids.sort();
    format!("({}{})", label(v), kids.concat())
}

/// Whether `x` and `y` are nested: one of `X ∩ Y`, `X ∩ Ȳ`, `X̄ ∩ Y`, `X̄ ∩ Ȳ` is empty.
pub fn nested_pair(full: Subset, x: Subset, y: Subset) -> bool {
    x.is_subset(y) || x.is_disjoint(y) || x.union(y) == full || y.is_subset(x)
}

/// True iff the family is pairwise nested.
pub fn check_nested(full: Subset, family: &[Subset]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, &x)| family[i + 1..].iter().all(|&y| nested_pair(full, x, y)))
}

/// The tree decomposition whose separations are exactly `family`, which
/// must be nested and closed under complementation.
///
/// Works through inclusion-minimal antichains: the minimal sets become
/// leaves hung below the deepest node whose subtree already covers them.
/// Afterwards degree-2 nodes with empty bags are spliced out.
pub fn nested_to_tree(full: Subset, family: &[Subset]) -> Result<TreeDecomposition> {
    let set: BTreeSet<Subset> = family.iter().copied().collect();
    for &x in &set {
        if !x.is_subset(full) {
            return Err(Error::Domain(format!("{x} is not inside the ground set")));
        }
        if !set.contains(&x.complement(full)) {
            return Err(Error::Domain(format!("family is not closed under complementation at {x}")));
        }
    }
    let list: Vec<Subset> = set.iter().copied().collect();
    if !check_nested(full, &list) {
        return Err(Error::Domain("family is not nested".into()));
    }

    let mut layers: Vec<Vec<Subset>> = Vec::new();
    let mut rest = set;
    while !rest.is_empty() {
        let minimal: Vec<Subset> = rest
            .iter()
            .copied()
            .filter(|&x| !rest.iter().any(|&y| y != x && y.is_subset(x)))
            .collect();
        for &x in &minimal {
            rest.remove(&x);
            rest.remove(&x.complement(full));
        }
        layers.push(minimal);
    }

    // rooted tree; parents always have smaller ids than children
    let mut bags = vec![full];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut depth = vec![0usize];
    for layer in layers.iter().rev() {
        let n = bags.len();
        let mut sub = bags.clone();
        for v in (1..n).rev() {
            let p = parent[v].expect("non-root");
            sub[p] = sub[p].union(sub[v]);
        }
        let mut covered = Subset::EMPTY;
        for &x in layer {
            let at = (1..n).filter(|&v| x.is_subset(sub[v])).max_by_key(|&v| depth[v]).unwrap_or(0);
            bags.push(x);
            parent.push(Some(at));
            depth.push(depth[at] + 1);
            covered = covered.union(x);
        }
        for b in &mut bags[..n] {
            *b = b.minus(covered);
        }
    }

    let n = bags.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            adj[v].insert(p);
            adj[p].insert(v);
        }
    }
    let mut alive = vec![true; n];
    for v in 0..n {
        if bags[v].is_empty() && adj[v].len() == 2 {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let (a, b) = (nb[0], nb[1]);
            adj[a].remove(&v);
            adj[b].remove(&v);
            adj[a].insert(b);
            adj[b].insert(a);
            adj[v].clear();
            alive[v] = false;
        }
    }
    let ids: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in ids.iter().enumerate() {
        new_id[v] = i;
    }
    let new_bags: Vec<Subset> = ids.iter().map(|&v| bags[v]).collect();
    let edges: Vec<(usize, usize)> = ids
        .iter()
        .flat_map(|&v| adj[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .map(|(v, w)| (new_id[v], new_id[w]))
        .collect();
    TreeDecomposition::new(full, new_bags, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::triangle;

    fn complete(full: Subset, sets: &[Subset]) -> Vec<Subset> {
        sets.iter().flat_map(|&x| [x, x.complement(full)]).collect()
    }

    #[test]
    fn pruning_contracts_the_empty_hub() {
        let full = Subset::full(9);
        let bags = vec![Subset::EMPTY, triangle(0), triangle(1), triangle(2)];
        let star = TreeDecomposition::new(full, bags, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (kept, _) = star.prune_empty_bags(&|t| t == 0);
        assert_eq!(kept.len(), 4);
        let (path, map) = star.prune_empty_bags(&|_| false);
        assert_eq!(path.len(), 3);
        assert_eq!(map, [0, 0, 1, 2]);
        assert_eq!(path.neighbors(0), [1, 2]);
        // the hub was folded into the first triangle, now the middle bag
        assert_eq!(path.bag(0), triangle(0));
        for t in 1..3 {
            assert!(path.separations().contains(&triangle(t)));
        }
    }

    #[test]
    fn nested_checks() {
        let full = Subset::full(9);
        assert!(check_nested(full, &[triangle(0), triangle(1)]));
        assert!(!check_nested(full, &[Subset::from_ids([0, 1]), Subset::from_ids([1, 2])]));
        assert!(check_nested(full, &[]));
    }

    #[test]
    fn base_and_pair() {
        let full = Subset::full(4);
        let td = nested_to_tree(full, &[]).unwrap();
        assert_eq!(td.len(), 1);
        assert_eq!(td.bag(0), full);
        let x = Subset::from_ids([0, 2]);
        let td = nested_to_tree(full, &complete(full, &[x])).unwrap();
        assert_eq!(td.len(), 2);
        let mut bags = td.bags().to_vec();
        bags.sort();
        let mut want = vec![x, x.complement(full)];
        want.sort();
        assert_eq!(bags, want);
    }

    #[test]
    fn triforce_star() {
        let full = Subset::full(9);
        let n = complete(full, &[triangle(0), triangle(1), triangle(2)]);
        let td = nested_to_tree(full, &n).unwrap();
        assert_eq!(td.len(), 4);
        let hub = (0..4).find(|&v| td.neighbors(v).len() == 3).unwrap();
        assert_eq!(td.bag(hub), Subset::EMPTY);
        let mut sep = n.clone();
        sep.sort();
        assert_eq!(td.separations(), sep);
    }

    #[test]
    fn rejects_bad_families() {
        let full = Subset::full(4);
        assert!(nested_to_tree(full, &[Subset::from_ids([0])]).is_err());
        let cross = complete(full, &[Subset::from_ids([0, 1]), Subset::from_ids([1, 2])]);
        assert!(nested_to_tree(full, &cross).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let full = Subset::full(6);
        let n = complete(full, &[Subset::from_ids([0]), Subset::from_ids([0, 1]), Subset::from_ids([0, 1, 2, 3])]);
        let td = nested_to_tree(full, &n).unwrap();
        let mut sep = n.clone();
        sep.sort();
        sep.dedup();
        assert_eq!(td.separations(), sep);
    }

    #[test]
    fn forms_ignore_ids() {
        let full = Subset::full(3);
        let a = TreeDecomposition::new(full, vec![Subset::from_ids([0]), Subset::from_ids([1, 2])], &[(0, 1)]).unwrap();
        let b = TreeDecomposition::new(full, vec![Subset::from_ids([1, 2]), Subset::from_ids([0])], &[(1, 0)]).unwrap();
        let la = |v: usize| a.bag(v).to_string();
        let lb = |v: usize| b.bag(v).to_string();
        assert_eq!(a.canonical_form(&la), b.canonical_form(&lb));
    }
}
