//! Main algorithms against the brute-force oracles on fixtures and on
//! seeded random instances.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tanglekit::bases::{lattice_bottom, lattice_members, BaseCatalog};
use tanglekit::decomposition::{canonical_decomposition, directed_from, verify_directed, verify_tangle_decomposition};
use tanglekit::oracles::*;
use tanglekit::separations::{leftmost_min_separation, rightmost_min_separation};
use tanglekit::*;

const RANDOM_INSTANCES: u64 = 120;

fn fixtures() -> Vec<(&'static str, ConnectivityOracle)> {
    vec![
        ("triforce", tanglekit::fixtures::triforce()),
        ("p3", tanglekit::fixtures::p3()),
        ("k4", tanglekit::fixtures::k4()),
        ("c5rank", tanglekit::fixtures::c5_rank()),
    ]
}

fn random_instances() -> Vec<(String, ConnectivityOracle)> {
    (0..RANDOM_INSTANCES).map(random_instance).collect()
}

fn members(k: &ConnectivityOracle, t: &dyn TangleMembership) -> Vec<Subset> {
    let mut m = tangle_members(k, t);
    m.sort();
    m
}

/// DS tangles equal the brute-force tangles order by order, and separations
/// agree with the brute-force leftmost separations.
fn check_ds(name: &str, k: ConnectivityOracle, top: u32) {
    let k = Arc::new(k);
    let engine = Engine::new(Arc::clone(&k));
    let ds = TangleDataStructure::build(Arc::clone(&engine), top).unwrap();
    let mut explicit = Vec::new();
    for o in 0..=top {
        let brute: BTreeSet<Vec<Subset>> = brute_force_tangles(&k, o).unwrap().into_iter().map(|t| t.members).collect();
        let ours: Vec<Vec<Subset>> =
            ds.indices_of_order(o).map(|i| members(&k, &ds.tangle(i).unwrap())).collect();
        let set: BTreeSet<Vec<Subset>> = ours.iter().cloned().collect();
        assert_eq!(set.len(), ours.len(), "{name}: duplicate tangles of order {o}");
        assert_eq!(set, brute, "{name}: tangles of order {o}");
        assert_eq!(engine.has_tangle_of_order(o).unwrap(), !brute.is_empty(), "{name}: existence at {o}");
        assert!(ours.len() <= k.n().max(1), "{name}: too many tangles of order {o}");
        for i in ds.indices_of_order(o) {
            explicit.push((i, ExplicitTangle::new(o, members(&k, &ds.tangle(i).unwrap()))));
        }
    }
    for (i, ti) in &explicit {
        assert_eq!(ds.find(ti.order, ti).unwrap(), *i, "{name}: find({i})");
        for (j, tj) in &explicit {
            if i == j {
                continue;
            }
            let want = brute_force_tangle_separation(&k, ti, tj).unwrap();
            assert_eq!(ds.separation(*i, *j).unwrap(), want, "{name}: separation({i}, {j})");
        }
    }
}

#[test]
fn ds_matches_brute_force_on_fixtures() {
    for (name, k) in fixtures() {
        let top = if name == "k4" { 3 } else { 2 };
        check_ds(name, k, top);
    }
}

#[test]
fn ds_matches_brute_force_on_random_instances() {
    random_instances().into_par_iter().for_each(|(name, k)| check_ds(&name, k, 3));
}

#[test]
fn decisions_match_reference_and_brute_force() {
    random_instances().into_par_iter().for_each(|(name, k)| {
        let mut rng = ChaCha8Rng::seed_from_u64(k.n() as u64 * 7919 + name.len() as u64);
        let k = Arc::new(k);
        let engine = Engine::new(Arc::clone(&k));
        for target in 1..=3u32 {
            let low: Vec<Subset> = k.full().submasks().filter(|&x| k.value(x) < target).collect();
            let t0s: Vec<ExplicitTangle> = brute_force_tangles(&k, target - 1).unwrap();
            for _ in 0..3 {
                let avoid: Vec<Subset> = (0..rng.gen_range(0..3)).map(|_| low[rng.gen_range(0..low.len())]).collect();
                let t0 = if t0s.is_empty() || rng.gen_bool(0.3) { None } else { Some(&t0s[rng.gen_range(0..t0s.len())]) };
                let want = brute_force_exists_avoiding(&k, t0, &avoid, target).unwrap();
                let reference = reference_exists_avoiding(&k, t0, &avoid, target).unwrap();
                let ours = engine.exists_tangle_avoiding(t0.map(|t| t as &dyn TangleMembership), &avoid, target).unwrap();
                assert_eq!(reference, want, "{name}: reference, target {target}, avoid {avoid:?}");
                assert_eq!(ours, want, "{name}: engine, target {target}, avoid {avoid:?}");
            }
        }
    });
}

#[test]
fn duality_on_small_instances() {
    random_instances().into_par_iter().filter(|(_, k)| k.n() <= BRANCH_WIDTH_LIMIT).for_each(|(name, k)| {
        let bw = brute_force_branch_width(&k).unwrap();
        assert_eq!(Engine::new(Arc::new(k)).max_tangle_order().unwrap(), bw, "{name}");
    });
}

#[test]
fn lattices_and_boxes_match_scans() {
    random_instances().into_par_iter().for_each(|(name, k)| {
        let cat = BaseCatalog::build(&k, 2).unwrap();
        for e in &cat.entries {
            let scan = brute_force_lattice(&k, e.base.b1, e.base.b2).unwrap();
            assert_eq!(lattice_members(&k, &e.base).unwrap(), scan, "{name}: L({:?})", e.base);
            assert_eq!(lattice_bottom(&k, &e.base).unwrap(), scan[0], "{name}: bottom");
        }
        let full = k.full();
        let mut rng = ChaCha8Rng::seed_from_u64(k.n() as u64);
        for _ in 0..20 {
            let x = Subset(rng.gen::<u64>() & full.bits() & rng.gen::<u64>());
            let y = Subset(rng.gen::<u64>() & full.minus(x).bits() & rng.gen::<u64>());
            let want = brute_force_box_leftmost(&k, x, y).unwrap();
            assert_eq!(Some(leftmost_min_separation(&k, x, y).unwrap()), want, "{name}: leftmost {x} {y}");
            let right = rightmost_min_separation(&k, x, y).unwrap();
            assert_eq!(Some(k.complement(right)), brute_force_box_leftmost(&k, y, x).unwrap());
        }
    });
}

#[test]
fn decompositions_verify_on_random_instances() {
    random_instances().into_par_iter().for_each(|(name, k)| {
        let engine = Engine::new(Arc::new(k));
        for l in 1..=3 {
            let ttd = canonical_decomposition(&engine, l).unwrap();
            let rep = verify_tangle_decomposition(&ttd).unwrap();
            assert!(rep.passed(), "{name} at {l}: {rep}");
            if let Some(a) = ttd.adhesion() {
                assert!(a < l, "{name}: adhesion {a} at {l}");
            }
            let n = engine.oracle().n();
            if n >= 2 {
                assert!(ttd.tau.len() < n, "{name}: {} maximal tangles", ttd.tau.len());
            }
            for &(i, _) in &ttd.tau {
                let d = directed_from(&ttd, i).unwrap();
                assert!(verify_directed(&d).unwrap().passed(), "{name}: directed at {i}");
            }
        }
    });
}

#[test]
fn exactify_on_random_partial_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, k) in fixtures().into_iter().chain(random_instances().into_iter().take(40).map(|(n, k)| (n.leak() as &str, k))) {
        if k.n() < 2 {
            continue;
        }
        for _ in 0..5 {
            let pd = random_partial_decomposition(&k, &mut rng);
            let ex = decomposition::exactify(&k, &pd).unwrap();
            assert!(ex.is_exact(), "{name}");
            for &(a, b) in pd.edges() {
                assert!(k.value(ex.label(a, b)) <= k.value(pd.label(a, b)), "{name}: edge ({a}, {b})");
            }
            for u in pd.leaves() {
                assert!(ex.leaf_set(u).is_subset(pd.leaf_set(u)), "{name}: leaf {u}");
            }
        }
    }
}

#[test]
fn tree_separation_agrees_below_order_three() {
    // the tree-walk separation is a cross-check only; it is exact while all
    // tangles have order at most 2
    random_instances().into_par_iter().for_each(|(name, k)| {
        let ds = TangleDataStructure::build(Engine::new(Arc::new(k)), 2).unwrap();
        for o in 1..=2 {
            for i in ds.indices_of_order(o) {
                for j in ds.indices_of_order(o).filter(|&j| j != i) {
                    assert_eq!(ds.separation_via_tree(i, j).unwrap(), ds.separation(i, j).unwrap(), "{name}: ({i}, {j})");
                }
            }
        }
    });
}

/// Two K4s sharing a vertex: at order 3 the tree walk finds a member of
/// order 2, while each K4's edge set separates the tangles with order 1.
#[test]
fn tree_separation_misses_minimum_at_order_three() {
    let mut edges = Vec::new();
    for base in [0usize, 3] {
        let vs = [0, base + 1, base + 2, base + 3];
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((vs[a], vs[b]));
            }
        }
    }
    let k = Arc::new(ConnectivityOracle::edge_boundary(&Graph::new(7, edges).unwrap()).unwrap());
    let ds = TangleDataStructure::build(Engine::new(Arc::clone(&k)), 3).unwrap();
    let top: Vec<usize> = ds.indices_of_order(3).collect();
    assert_eq!(top.len(), 2);
    let (i, j) = (top[0], top[1]);
    let exact = ds.separation(i, j).unwrap().unwrap();
    let (ti, tj) = (ds.tangle(i).unwrap(), ds.tangle(j).unwrap());
    assert_eq!(brute_force_tangle_separation(&k, &ti, &tj).unwrap(), Some(exact));
    assert_eq!(k.value(exact), 1);
    let walked = ds.separation_via_tree(i, j).unwrap().unwrap();
    assert!(k.value(walked) > k.value(exact));
}
