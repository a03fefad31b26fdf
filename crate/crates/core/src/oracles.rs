//! Brute-force reference implementations, random instance generators and the
//! canonicity harness. Everything here is exponential and meant for tests.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{enumerate_bases, in_lattice_by_definition, Base};
use crate::connectivity::ConnectivityOracle;
use crate::decomposition::{directed_from, PartialDecomposition, TangleTreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Gf2Matrix, Graph};
use crate::subset::Subset;
use crate::tangles::{check_axioms, Engine, ExplicitTangle, TangleMembership};

pub const TANGLE_SEARCH_LIMIT: usize = 10;
pub const BRANCH_WIDTH_LIMIT: usize = 7;
const SEARCH_NODE_BUDGET: u64 = 5_000_000;

/// All tangles of order exactly `k`, by backtracking over the orientations
/// of the separations of order `< k`.
pub fn brute_force_tangles(kf: &ConnectivityOracle, k: u32) -> Result<Vec<ExplicitTangle>> {
    let n = kf.n();
    if n > TANGLE_SEARCH_LIMIT {
        return Err(Error::SizeGuard { guard: "brute-force-tangles", actual: n, limit: TANGLE_SEARCH_LIMIT });
    }
    if k == 0 {
        return Ok(vec![ExplicitTangle::new(0, Vec::new())]);
    }
    let full = kf.full();
    let mut pairs: Vec<Subset> = full
        .submasks()
        .filter(|&x| kf.value(x) < k && x.bits() < x.complement(full).bits())
        .collect();
    pairs.sort_by_key(|&x| (kf.value(x), x));

    let mut search = Search { kf, k, full, out: Vec::new(), nodes: 0 };
    let mut st = State { mark: vec![0; 1 << n], up: vec![false; 1 << n], chosen: Vec::new() };
    let mut forced = vec![full];
    for i in full.iter() {
        if kf.value(Subset::singleton(i)) < k {
            forced.push(Subset::singleton(i).complement(full));
        }
    }
    if search.commit(&mut st, &forced) {
        search.run(st, &pairs, 0)?;
    }
    let mut out = search.out;
    out.sort_by(|a, b| a.members.cmp(&b.members));
    for t in &out {
        if let Some(v) = check_axioms(kf, &t.members, k)? {
            return Err(Error::Integrity(format!("backtracking produced a non-tangle: {v:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone)]
struct State {
    /// 1 member, -1 complement is a member, 0 open.
    mark: Vec<i8>,
    /// Up-closure of the pairwise intersections of members.
    up: Vec<bool>,
    chosen: Vec<Subset>,
}

struct Search<'a> {
    kf: &'a ConnectivityOracle,
    k: u32,
    full: Subset,
    out: Vec<ExplicitTangle>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, st: State, pairs: &[Subset], from: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_BUDGET {
            return Err(Error::SizeGuard {
                guard: "brute-force-tangles search nodes",
                actual: self.nodes as usize,
                limit: SEARCH_NODE_BUDGET as usize,
            });
        }
        let Some(pos) = (from..pairs.len()).find(|&i| st.mark[pairs[i].0 as usize] == 0) else {
            self.out.push(ExplicitTangle::new(self.k, st.chosen.clone()));
            return Ok(());
        };
        let x = pairs[pos];
        for s in [x, x.complement(self.full)] {
            let mut next = st.clone();
            if self.commit(&mut next, &[s]) {
                self.run(next, pairs, pos + 1)?;
            }
        }
        Ok(())
    }

    /// Add the sets and everything they force; false on a conflict.
    fn commit(&self, st: &mut State, sets: &[Subset]) -> bool {
        let mut queue: Vec<Subset> = sets.to_vec();
        while let Some(s) = queue.pop() {
            match st.mark[s.0 as usize] {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            if s.len() <= 1 || st.up[s.complement(self.full).0 as usize] {
                return false;
            }
            let mut fresh = vec![s];
            for &a in &st.chosen {
                fresh.push(a.intersect(s));
            }
            for &d in &fresh {
                if d.is_empty() || st.chosen.iter().any(|&c| c.is_disjoint(d)) {
                    return false;
                }
            }
            st.chosen.push(s);
            st.mark[s.0 as usize] = 1;
            st.mark[s.complement(self.full).0 as usize] = -1;
            for d in fresh {
                mark_up(&mut st.up, d, self.full);
            }
            for extra in s.complement(self.full).submasks() {
                let y = s.union(extra);
                if st.mark[y.0 as usize] == 0 && self.kf.value(y) < self.k {
                    queue.push(y);
                }
            }
        }
        true
    }
}

fn mark_up(table: &mut [bool], s: Subset, full: Subset) {
    if table[s.0 as usize] {
        return;
    }
    for extra in s.complement(full).submasks() {
        table[s.union(extra).0 as usize] = true;
    }
}

/// Least width over all branch decompositions, by enumerating every cubic
/// tree with the elements as leaves.
pub fn brute_force_branch_width(kf: &ConnectivityOracle) -> Result<u32> {
    let n = kf.n();
    if n > BRANCH_WIDTH_LIMIT {
        return Err(Error::SizeGuard { guard: "brute-force-branch-width", actual: n, limit: BRANCH_WIDTH_LIMIT });
    }
    if n == 1 {
        return Ok(0);
    }
    let mut best = u32::MAX;
    let mut edges = vec![(0usize, 1usize)];
    grow_cubic(kf, n, 2, &mut edges, &mut best);
    Ok(best)
}

fn grow_cubic(kf: &ConnectivityOracle, n: usize, next: usize, edges: &mut Vec<(usize, usize)>, best: &mut u32) {
    if next == n {
        let w = cubic_width(kf, n, edges);
        *best = (*best).min(w);
        return;
    }
    let inner = n + (next - 2);
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        edges[i] = (a, inner);
        edges.push((inner, b));
        edges.push((inner, next));
        grow_cubic(kf, n, next + 1, edges, best);
        edges.pop();
        edges.pop();
        edges[i] = (a, b);
    }
}

/// Leaves are the nodes `0..n` and stand for the elements with those ids.
fn cubic_width(kf: &ConnectivityOracle, n: usize, edges: &[(usize, usize)]) -> u32 {
    let nodes = edges.len() + 1;
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    edges
        .iter()
        .map(|&(a, b)| {
            let mut side = Subset::EMPTY;
            let mut stack = vec![(b, a)];
            while let Some((v, from)) = stack.pop() {
                if v < n {
                    side = side.with(v);
                }
                stack.extend(adj[v].iter().filter(|&&w| w != from).map(|&w| (w, v)));
            }
            kf.value(side)
        })
        .max()
        .unwrap_or(0)
}

/// The least feasible set of minimum order: minimise over all feasible sets,
/// intersect the minimisers and check the intersection is itself one.
/// `None` if nothing is feasible.
pub fn brute_force_leftmost_separation(
    kf: &ConnectivityOracle,
    feasible: &dyn Fn(Subset) -> bool,
) -> Result<Option<Subset>> {
    let mut best = u32::MAX;
    let mut meet = kf.full();
    for z in kf.full().submasks() {
        if !feasible(z) {
            continue;
        }
        let v = kf.value(z);
        if v < best {
            best = v;
            meet = z;
        } else if v == best {
            meet = meet.intersect(z);
        }
    }
    if best == u32::MAX {
        return Ok(None);
    }
    if !feasible(meet) || kf.value(meet) != best {
        return Err(Error::Integrity(format!("the minimum separations have no least element (meet {meet})")));
    }
    Ok(Some(meet))
}

/// Leftmost minimum separation in the box `X ⊆ Z ⊆ Ȳ`.
pub fn brute_force_box_leftmost(kf: &ConnectivityOracle, x: Subset, y: Subset) -> Result<Option<Subset>> {
    brute_force_leftmost_separation(kf, &|z| x.is_subset(z) && z.is_disjoint(y))
}

/// Leftmost minimum `(T, T′)`-separation of two explicit tangles.
pub fn brute_force_tangle_separation(
    kf: &ConnectivityOracle,
    t: &dyn TangleMembership,
    t2: &dyn TangleMembership,
) -> Result<Option<Subset>> {
    let full = kf.full();
    brute_force_leftmost_separation(kf, &|z| t.contains(z) && t2.contains(z.complement(full)))
}

/// `L(b1, b2)` by scanning every subset against the definition.
pub fn brute_force_lattice(kf: &ConnectivityOracle, b1: Subset, b2: Subset) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for z in kf.full().submasks() {
        if in_lattice_by_definition(kf, b1, b2, z)? {
            out.push(z);
        }
    }
    out.sort();
    Ok(out)
}

/// Whether a tangle of order `target` extends `t0` and avoids every set in
/// `avoid`, by filtering the brute-force tangle list.
pub fn brute_force_exists_avoiding(
    kf: &ConnectivityOracle,
    t0: Option<&ExplicitTangle>,
    avoid: &[Subset],
    target: u32,
) -> Result<bool> {
    Ok(brute_force_tangles(kf, target)?.iter().any(|t| {
        t0.is_none_or(|t0| t0.members.iter().all(|&x| t.contains(x)))
            && t.members.iter().all(|&x| avoid.iter().all(|&a| !x.is_subset(a)))
    }))
}

/// The decision procedure with every lattice from the definition and the
/// closure rule applied one set at a time, scanning all triples of bases.
pub fn reference_exists_avoiding(
    kf: &ConnectivityOracle,
    t0: Option<&ExplicitTangle>,
    avoid: &[Subset],
    target: u32,
) -> Result<bool> {
    if target == 0 {
        return Ok(true);
    }
    let full = kf.full();
    let bases: Vec<Base> = enumerate_bases(kf, target - 1)?;
    let lattices: Vec<Vec<Subset>> =
        bases.iter().map(|b| brute_force_lattice(kf, b.b1, b.b2)).collect::<Result<_>>()?;
    let mut mu: Vec<Subset> = Vec::with_capacity(bases.len());
    for (i, b) in bases.iter().enumerate() {
        let mut y = Subset::EMPTY;
        if let Some(t0) = t0.filter(|t| t.order > 0) {
            let flipped = brute_force_lattice(kf, b.b2, b.b1)?;
            let inside: Vec<Subset> = flipped.into_iter().filter(|&z| t0.contains(z)).collect();
            if !inside.is_empty() {
                let bottom = inside.iter().fold(full, |a, &z| a.intersect(z));
                y = y.union(bottom.complement(full));
            }
        }
        for &z in &lattices[i] {
            if avoid.iter().any(|&a| z.is_subset(a)) || z.len() == 1 {
                y = y.union(z);
            }
        }
        mu.push(y);
    }
    loop {
        let values: BTreeSet<Subset> = mu.iter().copied().collect();
        let values: Vec<Subset> = values.into_iter().collect();
        let mut unions: BTreeSet<Subset> = BTreeSet::new();
        for (i, &c) in values.iter().enumerate() {
            for &d in &values[i..] {
                unions.insert(c.union(d));
            }
        }
        if unions.contains(&full) {
            return Ok(false);
        }
        let mut step = None;
        'scan: for (i, lat) in lattices.iter().enumerate() {
            for &y in lat {
                if !y.is_subset(mu[i]) && unions.iter().any(|&u| y.is_subset(u)) {
                    step = Some((i, y));
                    break 'scan;
                }
            }
        }
        match step {
            Some((i, y)) => mu[i] = mu[i].union(y),
            None => return Ok(true),
        }
    }
}

/// Erdős–Rényi graph.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("valid edges")
}

/// Uniform GF(2) matrix.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let data = (0..rows).map(|_| rng.gen::<u64>() & Subset::full(cols).bits()).collect();
    Gf2Matrix::new(rows, cols, data).expect("valid matrix")
}

/// A small random connectivity function; the description names the seed.
pub fn random_instance(seed: u64) -> (String, ConnectivityOracle) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
    match rng.gen_range(0..3) {
        0 => loop {
            let n = rng.gen_range(3..=6);
            let g = random_graph(&mut rng, n, p);
            if (1..=8).contains(&g.m()) {
                let k = ConnectivityOracle::edge_boundary(&g).expect("edges present");
                return (format!("seed {seed}: edge boundary, {} vertices, p={p}", g.n), k);
            }
        },
        1 => {
            let n = rng.gen_range(2..=6);
            let g = random_graph(&mut rng, n, p);
            let k = ConnectivityOracle::cut_rank(&g).expect("vertices present");
            (format!("seed {seed}: cut rank, {} vertices, p={p}", g.n), k)
        }
        _ => {
            let (r, c) = (rng.gen_range(1..=3), rng.gen_range(2..=6));
            let m = random_matrix(&mut rng, r, c);
            (format!("seed {seed}: matroid {r}x{c}"), ConnectivityOracle::matroid(&m).expect("columns present"))
        }
    }
}

/// A non-exact partial decomposition: a random cubic tree whose leaves get
/// the blocks of a random partition, enlarged at random, with internal sets
/// thinned top-down as far as the covering condition allows.
pub fn random_partial_decomposition(kf: &ConnectivityOracle, rng: &mut impl Rng) -> PartialDecomposition {
    let full = kf.full();
    let n = kf.n();
    loop {
        // two leaves would leave no internal node to be non-exact at
        let leaves = rng.gen_range(3..=n.clamp(3, 6));
        // cubic tree by leaf insertion; leaves are nodes 0..leaves
        let mut edges = vec![(0usize, 1usize)];
        for next in 2..leaves {
            let inner = leaves + next - 2;
            let i = rng.gen_range(0..edges.len());
            let (a, b) = edges[i];
            edges[i] = (a, inner);
            edges.push((inner, b));
            edges.push((inner, next));
        }
        let nodes = edges.len() + 1;
        let mut block = vec![Subset::EMPTY; leaves];
        for e in full.iter() {
            let j = rng.gen_range(0..leaves);
            block[j] = block[j].with(e);
        }
        // root at leaf 0; xi[v] is the set on the edge from v's parent to v
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![usize::MAX; nodes];
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in &adj[v] {
                if w != parent[v] && w != 0 {
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut xi = vec![Subset::EMPTY; nodes];
        for &v in order.iter().rev() {
            if v == 0 {
                continue;
            }
            if v < leaves {
                let mut x = block[v];
                for e in full.iter() {
                    if rng.gen_bool(0.25) {
                        x = x.with(e);
                    }
                }
                xi[v] = x;
            } else {
                xi[v] = adj[v].iter().filter(|&&w| w != parent[v]).fold(Subset::EMPTY, |a, &w| a.union(xi[w]));
            }
        }
        for &v in &order {
            if v == 0 || v < leaves {
                continue;
            }
            let p = parent[v];
            let sib = adj[p].iter().copied().find(|&w| w != v && w != parent[p]);
            let need = match sib {
                Some(s) if p != 0 => xi[p].minus(xi[s]),
                _ => Subset::EMPTY,
            };
            for e in xi[v].iter() {
                if !need.contains(e) && rng.gen_bool(0.3) {
                    xi[v] = xi[v].without(e);
                }
            }
        }
        let labels: Vec<Subset> = edges
            .iter()
            .map(|&(a, b)| if parent[b] == a { xi[b] } else { xi[a].complement(full) })
            .collect();
        if let Ok(pd) = PartialDecomposition::new(full, nodes, edges, labels) {
            if !pd.is_exact() {
                return pd;
            }
        }
    }
}

/// Connected graphs with `1..=max_edges` edges, one per isomorphism class.
pub fn connected_graphs_up_to_edges(max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for v in 2..=max_edges + 1 {
        out.extend(graph_classes(v, |g| (1..=max_edges).contains(&g.m()) && g.is_connected()));
    }
    out
}

/// All graphs on `1..=max_vertices` vertices, one per isomorphism class.
pub fn graphs_up_to_vertices(max_vertices: usize) -> Vec<Graph> {
    (1..=max_vertices).flat_map(|v| graph_classes(v, |_| true)).collect()
}

fn graph_classes(v: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let perms = permutations(v);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let edges: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(v, edges).expect("valid");
        if !keep(&g) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                g.edges.iter().fold(0u64, |acc, &(a, b)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    acc | 1 << slots.iter().position(|&s| s == (x, y)).expect("slot")
                })
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Members of a tangle: every set of order below the tangle order it holds.
pub fn tangle_members(kf: &ConnectivityOracle, t: &dyn TangleMembership) -> Vec<Subset> {
    kf.full().submasks().filter(|&x| kf.value(x) < t.order() && t.contains(x)).collect()
}

/// A hash of the member list of a tangle after mapping by `map`.
pub fn tangle_fingerprint(order: u32, members: &[Subset], map: &dyn Fn(Subset) -> Subset) -> String {
    let mut bits: Vec<u64> = members.iter().map(|&x| map(x).bits()).collect();
    bits.sort();
    let mut h = DefaultHasher::new();
    (order, bits).hash(&mut h);
    format!("{order}#{:016x}", h.finish())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CanonicityReport {
    pub trials: usize,
    pub failures: Vec<String>,
    /// Trials where a tangle got a different index after relabelling; the
    /// data structure's numbering is not canonical, so this is no failure.
    pub index_changes: usize,
}

impl CanonicityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Snapshot {
    ttd: TangleTreeDecomposition,
    members: HashMap<usize, (u32, Vec<Subset>)>,
}

impl Snapshot {
    fn take(kf: Arc<ConnectivityOracle>, l: u32) -> Result<Snapshot> {
        let engine = Engine::new(Arc::clone(&kf));
        let ttd = crate::decomposition::canonical_decomposition(&engine, l)?;
        let mut members = HashMap::new();
        for &(i, _) in &ttd.tau {
            let t = ttd.ds().tangle(i)?;
            members.insert(i, (t.order(), tangle_members(&kf, &t)));
        }
        Ok(Snapshot { ttd, members })
    }

    fn prints(&self, map: &dyn Fn(Subset) -> Subset) -> HashMap<usize, String> {
        self.members.iter().map(|(&i, (o, m))| (i, tangle_fingerprint(*o, m, map))).collect()
    }
}

/// Recompute the canonical (and, if asked, directed) decomposition after
/// random relabellings and compare with the relabelled original.
pub fn canonicity_harness(
    kf: &Arc<ConnectivityOracle>,
    l: u32,
    trials: usize,
    seed: u64,
    directed: bool,
) -> Result<CanonicityReport> {
    let n = kf.n();
    let base = Snapshot::take(Arc::clone(kf), l)?;
    let results: Vec<Result<(Option<String>, bool)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let p = perm.clone();
            let map = move |x: Subset| x.permute(&p);
            let moved = Snapshot::take(Arc::new(ConnectivityOracle::relabel(kf, &perm)?), l)?;
            let pa = base.prints(&map);
            let pb = moved.prints(&|x| x);
            let a = base.ttd.canonical_form(&map, &|i| pa[&i].clone());
            let b = moved.ttd.canonical_form(&|x| x, &|i| pb[&i].clone());
            if a != b {
                return Ok((Some(format!("trial {trial}: canonical decompositions differ under {perm:?}")), false));
            }
            let mut matched = Vec::new();
            for &(i, _) in &base.ttd.tau {
                match pb.iter().find(|(_, f)| **f == pa[&i]) {
                    Some((&j, _)) => matched.push((i, j)),
                    None => return Ok((Some(format!("trial {trial}: tangle {i} has no counterpart")), false)),
                }
            }
            let changed = matched.iter().any(|&(i, j)| i != j);
            if directed && !matched.is_empty() {
                let (i, j) = matched[trial % matched.len()];
                let fa = directed_from(&base.ttd, i)?.rooted_form(&map, &|t| pa[&t].clone());
                let fb = directed_from(&moved.ttd, j)?.rooted_form(&|x| x, &|t| pb[&t].clone());
                if fa != fb {
                    return Ok((Some(format!("trial {trial}: directed decompositions differ under {perm:?}")), changed));
                }
            }
            Ok((None, changed))
        })
        .collect();
    let mut rep = CanonicityReport { trials, ..Default::default() };
    for r in results {
        let (fail, changed) = r?;
        rep.failures.extend(fail);
        rep.index_changes += changed as usize;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, triangle};

    #[test]
    fn tangle_counts() {
        assert_eq!(brute_force_tangles(&fixtures::triforce(), 2).unwrap().len(), 3);
        assert_eq!(brute_force_tangles(&fixtures::triforce(), 1).unwrap().len(), 1);
        assert_eq!(brute_force_tangles(&fixtures::p3(), 2).unwrap().len(), 0);
        assert_eq!(brute_force_tangles(&fixtures::k4(), 0).unwrap().len(), 1);
        assert_eq!(brute_force_tangles(&fixtures::k4(), 3).unwrap().len(), 1);
        assert!(brute_force_tangles(&fixtures::grid3(), 2).is_err());
    }

    #[test]
    fn branch_widths() {
        assert_eq!(brute_force_branch_width(&fixtures::p3()).unwrap(), 1);
        assert_eq!(brute_force_branch_width(&fixtures::k4()).unwrap(), 3);
        assert_eq!(brute_force_branch_width(&fixtures::c5_rank()).unwrap(), 2);
    }

    #[test]
    fn leftmost_examples() {
        let k = fixtures::triforce();
        let ts = brute_force_tangles(&k, 2).unwrap();
        let t0 = ts.iter().find(|t| t.contains(triangle(0))).unwrap();
        let t1 = ts.iter().find(|t| t.contains(triangle(1))).unwrap();
        assert_eq!(brute_force_tangle_separation(&k, t0, t1).unwrap(), Some(triangle(0)));
        let x = Subset::from_ids([0, 5]);
        assert_eq!(brute_force_box_leftmost(&k, x, k.complement(x)).unwrap(), Some(x));
        let lat = brute_force_lattice(&k, Subset::singleton(0), Subset::singleton(3)).unwrap();
        assert_eq!(lat[0], triangle(0));
    }

    #[test]
    fn reference_decisions() {
        let k = fixtures::triforce();
        let full = k.full();
        let one = ExplicitTangle::new(1, vec![full]);
        let c = |i| triangle(i).complement(full);
        for avoid in [vec![], vec![c(0)], vec![c(0), c(1)], vec![c(0), c(1), c(2)]] {
            let want = brute_force_exists_avoiding(&k, Some(&one), &avoid, 2).unwrap();
            assert_eq!(reference_exists_avoiding(&k, Some(&one), &avoid, 2).unwrap(), want);
        }
    }

    #[test]
    fn graph_classes() {
        assert_eq!(graphs_up_to_vertices(3).len(), 1 + 2 + 4);
        // connected graphs with at most 3 edges: P2, P3, K3, P4, K1,3
        assert_eq!(connected_graphs_up_to_edges(3).len(), 5);
    }

    #[test]
    fn random_partial_decompositions_are_not_exact() {
        let k = fixtures::triforce();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(!random_partial_decomposition(&k, &mut rng).is_exact());
        }
    }

    #[test]
    fn harness_on_triforce() {
        let k = Arc::new(fixtures::triforce());
        let rep = canonicity_harness(&k, 2, 4, 7, true).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
