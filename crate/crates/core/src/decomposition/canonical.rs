//! Contractions, nested families for coherent tangle families and the
//! canonical tree decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::connectivity::ConnectivityOracle;
use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::tangle_ds::TangleDataStructure;
use crate::tangles::{Engine, TangleMembership};

use super::tree::{nested_to_tree, TreeDecomposition};

/// The ground set contracted at a node `t`: the bag of `t` plus one fresh
/// element `c_i` per neighbour subtree, with `κ∧t(X) = κ(X↑)`.
pub struct Contraction {
    node: usize,
    bag: Subset,
    parts: Vec<Subset>,
    /// Expansion of each contracted element.
    pieces: Vec<Subset>,
    oracle: Arc<ConnectivityOracle>,
}

impl std::fmt::Debug for Contraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Contraction")
            .field("node", &self.node)
            .field("bag", &self.bag)
            .field("parts", &self.parts)
            .finish()
    }
}

impl Contraction {
    /// Bag elements come first in ascending id order, followed by one
    /// element per neighbour subtree; subtrees are ordered by their sets.
    pub fn at(k: &Arc<ConnectivityOracle>, td: &TreeDecomposition, t: usize) -> Result<Contraction> {
        if t >= td.len() {
            return Err(Error::IndexOutOfRange { index: t, size: td.len() });
        }
        let bag = td.bag(t);
        let mut parts: Vec<Subset> = td.neighbors(t).iter().map(|&s| td.side(t, s)).collect();
        parts.sort();
        let mut pieces: Vec<Subset> = bag.iter().map(Subset::singleton).collect();
        pieces.extend(parts.iter().copied());
        let mut labels: Vec<String> = bag.iter().map(|i| k.ground().label(i)).collect();
        labels.extend((0..parts.len()).map(|i| format!("c{}", i + 1)));
        let ground = GroundSet::with_labels(labels)?;
        let inner = Arc::clone(k);
        let table = pieces.clone();
        let oracle = ConnectivityOracle::from_fn(ground, format!("{}∧{t}", k.name()), move |x| {
            inner.value(expand_with(&table, x))
        });
        Ok(Contraction { node: t, bag, parts, pieces, oracle: Arc::new(oracle) })
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn bag(&self) -> Subset {
        self.bag
    }

    /// `C̄_i`, the sets the fresh elements stand for, in element order.
    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// Element of the contraction standing for `parts()[i]`.
    pub fn part_element(&self, i: usize) -> usize {
        self.bag.len() + i
    }

    pub fn oracle(&self) -> &Arc<ConnectivityOracle> {
        &self.oracle
    }

    /// Size of the contracted ground set.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `X↑`: bag elements map to themselves, `c_i` to `C̄_i`.
    pub fn expand(&self, x: Subset) -> Subset {
        expand_with(&self.pieces, x)
    }

    /// Inverse of [`expand`](Self::expand) on unions of bag elements and whole parts.
    pub fn contract(&self, x: Subset) -> Option<Subset> {
        let mut out = Subset::EMPTY;
        let mut seen = Subset::EMPTY;
        for (i, &p) in self.pieces.iter().enumerate() {
            if p.is_subset(x) {
                out = out.with(i);
                seen = seen.union(p);
            } else if !p.is_disjoint(x) {
                return None;
            }
        }
        (seen == x).then_some(out)
    }
}

fn expand_with(pieces: &[Subset], x: Subset) -> Subset {
    x.iter().fold(Subset::EMPTY, |a, i| a.union(pieces[i]))
}

/// `T∧t = { X : X↑ ∈ T }` over a contraction.
pub struct ProjectedTangle<T> {
    inner: T,
    contraction: Arc<Contraction>,
}

impl<T: TangleMembership> TangleMembership for ProjectedTangle<T> {
    fn order(&self) -> u32 {
        self.inner.order()
    }

    fn contains(&self, x: Subset) -> bool {
        self.contraction.oracle.value(x) < self.inner.order() && self.inner.contains(self.contraction.expand(x))
    }
}

/// The projection of `t` onto the contraction, or `None` when `t` contains
/// one of the contracted parts, in which case the projection is not a tangle.
pub fn project_tangle<T: TangleMembership>(t: T, c: &Arc<Contraction>) -> Option<ProjectedTangle<T>> {
    if c.parts.iter().any(|&p| t.contains(p)) {
        return None;
    }
    Some(ProjectedTangle { inner: t, contraction: Arc::clone(c) })
}

/// A tree decomposition with the maximal tangles of order at most `order`
/// assigned injectively to nodes. Unassigned nodes are hubs.
#[derive(Clone, Debug)]
pub struct TangleTreeDecomposition {
    pub tree: TreeDecomposition,
    pub order: u32,
    /// `(tangle index, node)`, sorted by tangle index.
    pub tau: Vec<(usize, usize)>,
    ds: TangleDataStructure,
}

impl TangleTreeDecomposition {
    pub fn new(
        tree: TreeDecomposition,
        order: u32,
        mut tau: Vec<(usize, usize)>,
        ds: TangleDataStructure,
    ) -> TangleTreeDecomposition {
        tau.sort();
        TangleTreeDecomposition { tree, order, tau, ds }
    }

    pub fn ds(&self) -> &TangleDataStructure {
        &self.ds
    }

    pub fn tangle_at(&self, node: usize) -> Option<usize> {
        self.tau.iter().find(|&&(_, v)| v == node).map(|&(i, _)| i)
    }

    pub fn node_of(&self, tangle: usize) -> Option<usize> {
        self.tau.iter().find(|&&(i, _)| i == tangle).map(|&(_, v)| v)
    }

    pub fn is_hub(&self, node: usize) -> bool {
        self.tangle_at(node).is_none()
    }

    /// Largest order of an edge separation.
    pub fn adhesion(&self) -> Option<u32> {
        let k = self.ds.engine().oracle();
        self.tree.edges().iter().map(|&(a, b)| k.value(self.tree.side(a, b))).max()
    }

    /// Isomorphism invariant of the tree with bags mapped by `map` and
    /// tangle nodes labelled by `tangle_label`.
    pub fn canonical_form(&self, map: &dyn Fn(Subset) -> Subset, tangle_label: &dyn Fn(usize) -> String) -> String {
        self.tree.canonical_form(&|v| {
            let kind = match self.tangle_at(v) {
                Some(i) => format!("t{}", tangle_label(i)),
                None => "h".to_string(),
            };
            format!("{:x}:{kind}", map(self.tree.bag(v)).bits())
        })
    }
}

/// For each tangle, orient every edge of smaller order towards the tangle
/// and return the sink component, which must be a single node.
pub fn assign_tangle_nodes(
    ds: &TangleDataStructure,
    td: &TreeDecomposition,
    tangles: &[usize],
) -> Result<Vec<(usize, usize)>> {
    let k = ds.engine().oracle();
    let edges = td.edges();
    let mut tau = Vec::with_capacity(tangles.len());
    for &i in tangles {
        let t = ds.tangle(i)?;
        let o = t.order();
        let mut comp: Vec<usize> = (0..td.len()).collect();
        let mut oriented = Vec::new();
        for &(a, b) in &edges {
            let x = td.side(a, b);
            if k.value(x) < o {
                oriented.push(if t.contains(x) { (a, b) } else { (b, a) });
            } else {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp[ra] = rb;
            }
        }
        let roots: Vec<usize> = (0..td.len()).map(|v| find(&mut comp, v)).collect();
        let sinks: BTreeSet<usize> = roots
            .iter()
            .copied()
            .filter(|&r| !oriented.iter().any(|&(from, _)| roots[from] == r))
            .collect();
        if sinks.len() != 1 {
            return Err(Error::Integrity(format!("tangle {i} orients the tree towards {} components", sinks.len())));
        }
        let sink = *sinks.iter().next().expect("one sink");
        let members: Vec<usize> = (0..td.len()).filter(|&v| roots[v] == sink).collect();
        if members.len() != 1 {
            return Err(Error::Precondition(format!(
                "the sink component of tangle {i} has {} nodes",
                members.len()
            )));
        }
        let v = members[0];
        if let Some(&s) = td.neighbors(v).iter().find(|&&s| !t.contains(td.side(s, v))) {
            return Err(Error::Precondition(format!("tangle {i} does not contain the side of node {v} facing {s}")));
        }
        tau.push((i, v));
    }
    let mut nodes: Vec<usize> = tau.iter().map(|&(_, v)| v).collect();
    nodes.sort();
    nodes.dedup();
    if nodes.len() != tau.len() {
        return Err(Error::Precondition("two tangles share a node".into()));
    }
    tau.sort();
    Ok(tau)
}

fn find(comp: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while comp[r] != r {
        r = comp[r];
    }
    let mut v = v;
    while comp[v] != r {
        let next = comp[v];
        comp[v] = r;
        v = next;
    }
    r
}

/// Nested family for tangles of one order that share their truncation to
/// the order below. Each round adds every inclusion-minimal leftmost
/// separation between two tangles not separated yet.
pub fn coherent_nested_family(ds: &TangleDataStructure, family: &[usize]) -> Result<Vec<Subset>> {
    let mut family = family.to_vec();
    family.sort();
    family.dedup();
    if family.len() <= 1 {
        return Ok(Vec::new());
    }
    let ord = ds.order(family[0])?;
    if ord == 0 || family.iter().any(|&i| ds.order(i).ok() != Some(ord)) {
        return Err(Error::Domain("a coherent family has tangles of one positive order".into()));
    }
    let root = ds.truncation(family[0], ord - 1)?;
    for &i in &family[1..] {
        if ds.truncation(i, ord - 1)? != root {
            return Err(Error::Domain("tangles in a coherent family share their truncation".into()));
        }
    }
    let mut z: BTreeMap<(usize, usize), Subset> = BTreeMap::new();
    for &i in &family {
        for &j in &family {
            if i != j {
                let s = ds
                    .separation(i, j)?
                    .ok_or_else(|| Error::Integrity(format!("tangles {i} and {j} are not separated")))?;
                z.insert((i, j), s);
            }
        }
    }
    let mut chosen: BTreeSet<Subset> = BTreeSet::new();
    let mut open: Vec<usize> = family.clone();
    while open.len() > 1 {
        let candidates: BTreeSet<Subset> = open
            .iter()
            .flat_map(|&i| open.iter().filter(move |&&j| j != i).map(move |&j| (i, j)))
            .map(|p| z[&p])
            .collect();
        for &x in &candidates {
            if !candidates.iter().any(|&y| y != x && y.is_subset(x)) {
                chosen.insert(x);
            }
        }
        open.retain(|&i| !family.iter().any(|&j| j != i && chosen.contains(&z[&(i, j)])));
    }
    let full = ds.engine().full();
    let closed: BTreeSet<Subset> = chosen.iter().flat_map(|&x| [x, x.complement(full)]).collect();
    Ok(closed.into_iter().collect())
}

/// Canonical tree decomposition for all tangles of order at most `l`.
pub fn canonical_decomposition(engine: &Arc<Engine>, l: u32) -> Result<TangleTreeDecomposition> {
    let ds = TangleDataStructure::build(Arc::clone(engine), l)?;
    canonical_from_ds(&ds, l)
}

pub(crate) fn canonical_from_ds(ds: &TangleDataStructure, l: u32) -> Result<TangleTreeDecomposition> {
    let engine = ds.engine();
    let full = engine.full();
    let mut family: BTreeSet<Subset> = BTreeSet::new();
    let mut td = TreeDecomposition::single(full);
    let mut tau = assign_tangle_nodes(ds, &td, &ds.maximal(0)?)?;
    for k in 0..l {
        let next: Vec<usize> = ds.indices_of_order(k + 1).collect();
        if next.is_empty() {
            break;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for j in next {
            groups.entry(ds.truncation(j, k)?).or_default().push(j);
        }
        let jobs: Vec<(usize, Vec<usize>)> = groups.into_iter().filter(|(_, v)| v.len() > 1).collect();
        let local: Vec<Vec<Subset>> = jobs
            .par_iter()
            .map(|(ti, kids)| {
                let node = tau
                    .iter()
                    .find(|&&(i, _)| i == *ti)
                    .map(|&(_, v)| v)
                    .ok_or_else(|| Error::Integrity(format!("tangle {ti} has no node")))?;
                local_family(ds, &td, node, kids, k + 1)
            })
            .collect::<Result<_>>()?;
        for x in local.into_iter().flatten() {
            family.insert(x);
            family.insert(x.complement(full));
        }
        let list: Vec<Subset> = family.iter().copied().collect();
        td = nested_to_tree(full, &list)
            .map_err(|e| Error::Integrity(format!("separations stopped being nested: {e}")))?;
        tau = assign_tangle_nodes(ds, &td, &ds.maximal(k + 1)?)?;
    }
    Ok(TangleTreeDecomposition::new(td, l, tau, ds.clone()))
}

/// Expanded nested family separating the tangles `kids` (all of order
/// `ord`) inside the contraction at `node`.
fn local_family(
    ds: &TangleDataStructure,
    td: &TreeDecomposition,
    node: usize,
    kids: &[usize],
    ord: u32,
) -> Result<Vec<Subset>> {
    let k = ds.engine().oracle();
    let c = Arc::new(Contraction::at(k, td, node)?);
    let sub = TangleDataStructure::build(Engine::new(Arc::clone(c.oracle())), ord)?;
    let mut projected = Vec::with_capacity(kids.len());
    for &j in kids {
        let p = project_tangle(ds.tangle(j)?, &c)
            .ok_or_else(|| Error::Integrity(format!("tangle {j} contains a contracted part at node {node}")))?;
        projected.push(sub.find(ord, &p)?);
    }
    let mut distinct = projected.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != projected.len() {
        return Err(Error::Integrity(format!("two tangles project to the same tangle at node {node}")));
    }
    let nested = coherent_nested_family(&sub, &projected)?;
    Ok(nested.into_iter().map(|x| c.expand(x)).collect())
}

/// Tree decomposition of adhesion below `l` in which every node's
/// contraction has exactly one maximal tangle of order at most `l`.
pub fn refine_single_tangle(k: &Arc<ConnectivityOracle>, l: u32) -> Result<TreeDecomposition> {
    let engine = Engine::new(Arc::clone(k));
    let td = canonical_decomposition(&engine, l)?.tree;
    if td.len() == 1 || is_singleton_star(&td) {
        return Ok(td);
    }
    let full = k.full();
    let extra: Vec<Vec<Subset>> = (0..td.len())
        .into_par_iter()
        .map(|t| {
            let c = Contraction::at(k, &td, t)?;
            if c.len() >= k.n() {
                return Err(Error::Integrity(format!(
                    "contraction at node {t} has {} elements, not fewer than {}",
                    c.len(),
                    k.n()
                )));
            }
            let sub = TangleDataStructure::build(Engine::new(Arc::clone(c.oracle())), l)?;
            if sub.maximal(l)?.len() <= 1 {
                return Ok(Vec::new());
            }
            let inner = refine_single_tangle(c.oracle(), l)?;
            Ok(inner.separations().into_iter().map(|x| c.expand(x)).collect())
        })
        .collect::<Result<_>>()?;
    let mut family: BTreeSet<Subset> = td.separations().into_iter().collect();
    for x in extra.into_iter().flatten() {
        family.insert(x);
        family.insert(x.complement(full));
    }
    let list: Vec<Subset> = family.into_iter().collect();
    nested_to_tree(full, &list)
}

fn is_singleton_star(td: &TreeDecomposition) -> bool {
    (0..td.len()).any(|c| {
        td.neighbors(c).len() + 1 == td.len() && (0..td.len()).all(|v| v == c || td.bag(v).len() == 1)
    })
}

/// Number of maximal tangles of order at most `l` of each node's contraction.
pub fn maximal_counts_per_node(k: &Arc<ConnectivityOracle>, td: &TreeDecomposition, l: u32) -> Result<Vec<usize>> {
    (0..td.len())
        .map(|t| {
            let c = Contraction::at(k, td, t)?;
            let sub = TangleDataStructure::build(Engine::new(Arc::clone(c.oracle())), l)?;
            Ok(sub.maximal(l)?.len())
        })
        .collect()
}
