//! Literal checks of the conditions on tangle tree decompositions and
//! directed decompositions.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::subset::Subset;
use crate::tangles::TangleMembership;

use super::canonical::{assign_tangle_nodes, TangleTreeDecomposition};
use super::directed::DirectedTreeDecomposition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checked: Vec<&'static str>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, condition: &'static str, detail: String) {
        self.violations.push(Violation { condition, detail });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "ok ({})", self.checked.join(", "));
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{}: {}", v.condition, v.detail)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// TD1, TD2 and TD3 each checked on their own, plus: the assigned tangles
/// are exactly the maximal ones, all leaves are tangle nodes, and `τ` agrees
/// with a fresh derivation.
pub fn verify_tangle_decomposition(ttd: &TangleTreeDecomposition) -> Result<VerificationReport> {
    let ds = ttd.ds();
    let k = ds.engine().oracle();
    let full = k.full();
    let td = &ttd.tree;
    let mut rep = VerificationReport {
        checked: vec!["maximal", "injective", "TD1", "TD2", "TD3", "leaves", "tau"],
        ..Default::default()
    };

    let maximal = ds.maximal(ttd.order)?;
    let assigned: Vec<usize> = ttd.tau.iter().map(|&(i, _)| i).collect();
    if assigned != maximal {
        rep.fail("maximal", format!("assigned tangles {assigned:?}, maximal tangles {maximal:?}"));
    }
    let mut nodes: Vec<usize> = ttd.tau.iter().map(|&(_, v)| v).collect();
    nodes.sort();
    nodes.dedup();
    if nodes.len() != ttd.tau.len() || nodes.iter().any(|&v| v >= td.len()) {
        rep.fail("injective", "tangles do not sit on distinct nodes".into());
    }
    if !rep.passed() {
        return Ok(rep);
    }

    let tangles: Vec<_> = ttd.tau.iter().map(|&(i, _)| ds.tangle(i)).collect::<Result<_>>()?;
    let m = ttd.tau.len();
    let mut min_order = vec![vec![None; m]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                min_order[a][b] = ds.separation(ttd.tau[a].0, ttd.tau[b].0)?.map(|z| k.value(z));
                if min_order[a][b].is_none() {
                    rep.fail("TD1", format!("tangles {} and {} are comparable", ttd.tau[a].0, ttd.tau[b].0));
                }
            }
        }
    }
    // is β̃(t′, t) a minimum (T_a, T_b)-separation
    let is_min = |a: usize, b: usize, y: Subset| -> bool {
        min_order[a][b] == Some(k.value(y)) && tangles[a].contains(y) && tangles[b].contains(y.complement(full))
    };

    for a in 0..m {
        for b in 0..m {
            if a == b || min_order[a][b].is_none() {
                continue;
            }
            let path = td.path(ttd.tau[a].1, ttd.tau[b].1);
            if !path.windows(2).any(|w| is_min(a, b, td.side(w[1], w[0]))) {
                rep.fail("TD1", format!("no edge between tangles {} and {} is a minimum separation", ttd.tau[a].0, ttd.tau[b].0));
            }
        }
    }

    for (s, t) in td.edges() {
        for (t0, t1) in [(s, t), (t, s)] {
            // (t0, t1) lies on the path from every tangle on t0's side to
            // every tangle on t1's side
            let y = td.side(t1, t0);
            let near: Vec<bool> = (0..m).map(|a| reach(td, t1, t0, ttd.tau[a].1)).collect();
            let ok = (0..m).any(|a| near[a] && (0..m).any(|b| !near[b] && is_min(a, b, y)));
            if !ok {
                rep.fail("TD2", format!("edge ({t0}, {t1}) is not a minimum separation of tangles on its two sides"));
            }
        }
    }

    for (a, &(i, t)) in ttd.tau.iter().enumerate() {
        for &s in td.neighbors(t) {
            if !tangles[a].contains(td.side(s, t)) {
                rep.fail("TD3", format!("tangle {i} does not contain the side of node {t} facing {s}"));
            }
        }
    }

    if td.len() > 1 {
        for v in 0..td.len() {
            if td.neighbors(v).len() == 1 && ttd.is_hub(v) {
                rep.fail("leaves", format!("leaf {v} is a hub"));
            }
        }
    }

    match assign_tangle_nodes(ds, td, &assigned) {
        Ok(tau) if tau == ttd.tau => {}
        Ok(tau) => rep.fail("tau", format!("re-derived assignment {tau:?} differs")),
        Err(e) => rep.fail("tau", format!("assignment cannot be re-derived: {e}")),
    }
    Ok(rep)
}

/// Whether `v` lies on `t0`'s side of the edge `t0 t1`.
fn reach(td: &super::tree::TreeDecomposition, t1: usize, t0: usize, v: usize) -> bool {
    let mut stack = vec![(t0, t1)];
    while let Some((x, from)) = stack.pop() {
        if x == v {
            return true;
        }
        stack.extend(td.neighbors(x).iter().filter(|&&w| w != from).map(|&w| (w, x)));
    }
    false
}

/// Cone conditions, the bijection onto the maximal tangles, DTD1 and DTD2.
pub fn verify_directed(d: &DirectedTreeDecomposition) -> Result<VerificationReport> {
    let ds = d.ds();
    let full = ds.engine().full();
    let n = d.len();
    let mut rep = VerificationReport {
        checked: vec!["root", "monotone", "siblings", "bags", "bijective", "DTD1", "DTD2"],
        ..Default::default()
    };
    if d.cones[d.root] != full {
        rep.fail("root", format!("root cone is {}", d.cones[d.root]));
    }
    for u in 0..n {
        if let Some(p) = d.parent[u] {
            if !d.cones[u].is_subset(d.cones[p]) {
                rep.fail("monotone", format!("cone of {u} is not inside the cone of its parent {p}"));
            }
        }
    }
    for t in 0..n {
        let kids = d.children(t);
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                if !d.cones[a].is_disjoint(d.cones[b]) {
                    rep.fail("siblings", format!("cones of siblings {a} and {b} overlap"));
                }
            }
        }
    }
    let mut seen = Subset::EMPTY;
    for t in 0..n {
        let b = d.bag(t);
        if !b.is_disjoint(seen) {
            rep.fail("bags", format!("bag of {t} overlaps another bag"));
        }
        seen = seen.union(b);
    }
    if seen != full {
        rep.fail("bags", "bags do not cover the ground set".into());
    }
    let mut assigned = d.tangles.clone();
    assigned.sort();
    if assigned != ds.maximal(d.order)? {
        rep.fail("bijective", format!("node tangles {assigned:?} are not the maximal tangles"));
    }
    if !rep.passed() {
        return Ok(rep);
    }

    for t in 0..n {
        for u in 0..n {
            if u == t || d.is_ancestor(u, t) {
                continue;
            }
            // the greatest minimum (T_u, T_t)-separation is the complement
            // of the least minimum (T_t, T_u)-separation
            match ds.separation(d.tangles[t], d.tangles[u])? {
                Some(z) if d.cones[u].is_disjoint(z) => {}
                _ => rep.fail("DTD1", format!("no minimum separation of node {u} from node {t} contains the cone of {u}")),
            }
        }
    }
    for t in 0..n {
        if t == d.root {
            continue;
        }
        let mut ok = false;
        for u in 0..n {
            if d.is_ancestor(t, u) {
                continue;
            }
            if ds.separation(d.tangles[t], d.tangles[u])? == Some(d.cones[t]) {
                ok = true;
                break;
            }
        }
        if !ok {
            rep.fail("DTD2", format!("cone of node {t} is not a leftmost minimum separation"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::decomposition::canonical::canonical_decomposition;
    use crate::fixtures;
    use crate::tangles::Engine;

    #[test]
    fn triforce_passes_and_mutation_fails() {
        let engine = Engine::new(Arc::new(fixtures::triforce()));
        let ttd = canonical_decomposition(&engine, 2).unwrap();
        let rep = verify_tangle_decomposition(&ttd).unwrap();
        assert!(rep.passed(), "{rep}");
        let hub = (0..4).find(|&v| ttd.is_hub(v)).unwrap();
        let mut moved = ttd.clone();
        moved.tau[0].1 = hub;
        let rep = verify_tangle_decomposition(&moved).unwrap();
        assert!(rep.violations.iter().any(|v| v.condition == "TD3"), "{rep}");
    }

    #[test]
    fn single_node_vacuous() {
        let engine = Engine::new(Arc::new(fixtures::k4()));
        let ttd = canonical_decomposition(&engine, 3).unwrap();
        assert!(verify_tangle_decomposition(&ttd).unwrap().passed());
    }
}
