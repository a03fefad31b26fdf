//! Invariants as property tests over seeded random instances.

use std::sync::Arc;

use proptest::prelude::*;

use tanglekit::bases::{base_for_set, lattice_bottom, lattice_members, lattice_top, BaseCatalog};
use tanglekit::decomposition::{canonical_decomposition, check_nested, directed_from, exactify, nested_to_tree};
use tanglekit::oracles::{brute_force_tangles, random_instance, random_partial_decomposition, tangle_members};
use tanglekit::separations::{kappa_min, leftmost_min_separation, rightmost_min_separation};
use tanglekit::*;

fn instance() -> impl Strategy<Value = (String, Arc<ConnectivityOracle>)> {
    any::<u64>().prop_map(|s| {
        let (name, k) = random_instance(s);
        (name, Arc::new(k))
    })
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// An instance with a subset drawn from its ground set.
fn with_set() -> impl Strategy<Value = (Arc<ConnectivityOracle>, Subset, Subset)> {
    (instance(), any::<u64>(), any::<u64>()).prop_map(|((_, k), a, b)| {
        let full = k.full().bits();
        (k, Subset(a & full), Subset(b & full))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_and_submodular((k, x, y) in with_set()) {
        prop_assert_eq!(k.value(Subset::EMPTY), 0);
        prop_assert_eq!(k.value(x), k.value(k.complement(x)));
        prop_assert!(k.value(x) + k.value(y) >= k.value(x.union(y)) + k.value(x.intersect(y)));
        prop_assert!(k.value(x) + k.value(y) >= k.value(x.minus(y)) + k.value(y.minus(x)));
    }

    #[test]
    fn cut_rank_is_at_most_the_smaller_side(n in 1usize..8, bits in any::<u64>(), x in any::<u64>()) {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let edges = slots.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let k = ConnectivityOracle::cut_rank(&Graph::new(n, edges).unwrap()).unwrap();
        let x = Subset(x & k.full().bits());
        prop_assert!(k.value(x) as usize <= x.len().min(k.complement(x).len()));
    }

    #[test]
    fn normalize_vanishes_on_empty(shift in -50i64..50, n in 1usize..7, x in any::<u64>()) {
        let g = GroundSet::new(n).unwrap();
        let k = ConnectivityOracle::normalize(g, "shifted", move |s: Subset| {
            let inside = s.len() as i64;
            inside.min(n as i64 - inside) + shift
        });
        prop_assert_eq!(k.value(Subset::EMPTY), 0);
        let _ = k.value(Subset(x & k.full().bits()));
    }

    #[test]
    fn memo_is_transparent(seed in any::<u64>(), xs in prop::collection::vec(any::<u64>(), 1..20)) {
        let (name, memo) = random_instance(seed);
        let plain = random_instance(seed).1.without_memo();
        let mut last = memo.calls();
        for x in xs {
            let x = Subset(x & memo.full().bits());
            prop_assert_eq!(memo.value(x), plain.value(x), "{}", name);
            prop_assert!(memo.calls() >= last);
            last = memo.calls();
        }
    }

    #[test]
    fn leftmost_is_least_and_rightmost_greatest((k, x, y) in with_set()) {
        let y = y.minus(x);
        let v = kappa_min(&k, x, y).unwrap().value;
        let l = leftmost_min_separation(&k, x, y).unwrap();
        let r = rightmost_min_separation(&k, x, y).unwrap();
        prop_assert_eq!(k.value(l), v);
        prop_assert_eq!(k.value(r), v);
        for s in k.full().minus(x.union(y)).submasks() {
            let z = x.union(s);
            if k.value(z) == v {
                prop_assert!(l.is_subset(z) && z.is_subset(r));
            }
        }
        prop_assert_eq!(r, k.complement(leftmost_min_separation(&k, y, x).unwrap()));
    }

    #[test]
    fn kappa_min_grows_with_y((k, x, y) in with_set(), extra in any::<u64>()) {
        let y = y.minus(x);
        let bigger = Subset(y.bits() | (extra & k.full().bits())).minus(x);
        prop_assert!(kappa_min(&k, x, bigger).unwrap().value >= kappa_min(&k, x, y).unwrap().value);
    }

    #[test]
    fn leftmost_commutes_with_relabelling((k, x, y) in with_set(), p in perm(64)) {
        let p: Vec<usize> = { let n = k.n(); p.into_iter().filter(|&i| i < n).collect() };
        let y = y.minus(x);
        let moved = ConnectivityOracle::relabel(&k, &p).unwrap();
        let l = leftmost_min_separation(&k, x, y).unwrap();
        prop_assert_eq!(leftmost_min_separation(&moved, x.permute(&p), y.permute(&p)).unwrap(), l.permute(&p));
    }

    #[test]
    fn lattices_are_sublattices_of_one_order((_name, k) in instance()) {
        let cat = BaseCatalog::build(&k, 2).unwrap();
        for e in &cat.entries {
            let members = lattice_members(&k, &e.base).unwrap();
            let (bot, top) = (lattice_bottom(&k, &e.base).unwrap(), lattice_top(&k, &e.base).unwrap());
            for &a in &members {
                prop_assert_eq!(k.value(a), e.base.order);
                prop_assert!(bot.is_subset(a) && a.is_subset(top));
                for &b in &members {
                    prop_assert!(members.contains(&a.union(b)));
                    prop_assert!(members.contains(&a.intersect(b)));
                }
            }
        }
    }

    #[test]
    fn sets_lie_in_their_own_lattice((k, x, _y) in with_set()) {
        let b = base_for_set(&k, x).unwrap();
        prop_assert!(lattice_members(&k, &b).unwrap().contains(&x));
    }

    #[test]
    fn tangles_orient_every_low_separation((_name, k) in instance()) {
        let ds = TangleDataStructure::build(Engine::new(Arc::clone(&k)), 3).unwrap();
        for i in 0..ds.len() {
            let o = ds.order(i).unwrap();
            for x in k.full().submasks().filter(|&x| k.value(x) < o) {
                prop_assert!(ds.membership(i, x).unwrap() != ds.membership(i, k.complement(x)).unwrap());
            }
            prop_assert_eq!(ds.find(o, &ds.tangle(i).unwrap()).unwrap(), i);
        }
        for l in 1..=3 {
            prop_assert!(ds.size(l) - ds.size(l - 1) <= k.n());
        }
    }

    #[test]
    fn avoidance_is_monotone((_name, k) in instance(), picks in prop::collection::vec(any::<u64>(), 0..4), target in 1u32..4) {
        let engine = Engine::new(Arc::clone(&k));
        let low: Vec<Subset> = k.full().submasks().filter(|&x| k.value(x) < target).collect();
        let avoid: Vec<Subset> = picks.iter().map(|&p| low[(p % low.len() as u64) as usize]).collect();
        let mut prev = true;
        for m in 0..=avoid.len() {
            let now = engine.exists_tangle_avoiding(None, &avoid[..m], target).unwrap();
            prop_assert!(prev || !now);
            prev = now;
        }
    }

    #[test]
    fn brute_force_tangles_ignore_element_order((_name, k) in instance(), p in perm(64), order in 0u32..4) {
        let p: Vec<usize> = { let n = k.n(); p.into_iter().filter(|&i| i < n).collect() };
        let moved = ConnectivityOracle::relabel(&k, &p).unwrap();
        let mut a: Vec<Vec<Subset>> = brute_force_tangles(&k, order).unwrap().into_iter().map(|t| {
            let mut m: Vec<Subset> = t.members.iter().map(|x| x.permute(&p)).collect();
            m.sort();
            m
        }).collect();
        let mut b: Vec<Vec<Subset>> = brute_force_tangles(&moved, order).unwrap().into_iter().map(|t| t.members).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn nested_families_round_trip(bits in prop::collection::vec(any::<u64>(), 1..6), n in 2usize..9) {
        let full = Subset::full(n);
        // a chain plus complements is always nested
        let mut chain: Vec<Subset> = Vec::new();
        let mut acc = Subset::EMPTY;
        for b in bits {
            acc = acc.union(Subset(b & full.bits()));
            if !acc.is_empty() && acc != full {
                chain.push(acc);
            }
        }
        let mut family: Vec<Subset> = chain.iter().flat_map(|&x| [x, x.complement(full)]).collect();
        family.sort();
        family.dedup();
        prop_assert!(check_nested(full, &family));
        let td = nested_to_tree(full, &family).unwrap();
        prop_assert_eq!(td.separations(), family);
    }

    #[test]
    fn exactify_keeps_widths_and_shrinks_leaves((_name, k) in instance(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pd = random_partial_decomposition(&k, &mut rng);
        let ex = exactify(&k, &pd).unwrap();
        prop_assert!(ex.is_exact());
        prop_assert!(ex.width(&k) <= pd.width(&k));
        for u in pd.leaves() {
            prop_assert!(ex.leaf_set(u).is_subset(pd.leaf_set(u)));
        }
    }

    #[test]
    fn decompositions_have_low_adhesion_and_disjoint_cones((_name, k) in instance(), l in 1u32..4) {
        let ttd = canonical_decomposition(&Engine::new(Arc::clone(&k)), l).unwrap();
        if let Some(a) = ttd.adhesion() {
            prop_assert!(a < l);
        }
        if k.n() >= 2 {
            prop_assert!(ttd.tau.len() < k.n());
        }
        for &(i, _) in &ttd.tau {
            let d = directed_from(&ttd, i).unwrap();
            let mut seen = Subset::EMPTY;
            for t in 0..d.len() {
                prop_assert!(d.bag(t).is_disjoint(seen));
                seen = seen.union(d.bag(t));
                let kids = d.children(t);
                for (a, &u) in kids.iter().enumerate() {
                    for &w in &kids[a + 1..] {
                        prop_assert!(d.cones[u].is_disjoint(d.cones[w]));
                    }
                }
            }
            prop_assert_eq!(seen, k.full());
        }
    }

    #[test]
    fn canonical_decomposition_commutes_with_relabelling((_name, k) in instance(), p in perm(64), l in 1u32..4) {
        let p: Vec<usize> = { let n = k.n(); p.into_iter().filter(|&i| i < n).collect() };
        let moved = Arc::new(ConnectivityOracle::relabel(&k, &p).unwrap());
        let a = canonical_decomposition(&Engine::new(Arc::clone(&k)), l).unwrap();
        let b = canonical_decomposition(&Engine::new(Arc::clone(&moved)), l).unwrap();
        let print = |ttd: &TangleTreeDecomposition, kf: &ConnectivityOracle, i: usize, map: &dyn Fn(Subset) -> Subset| {
            let t = ttd.ds().tangle(i).unwrap();
            tanglekit::oracles::tangle_fingerprint(t.order(), &tangle_members(kf, &t), map)
        };
        let map = |x: Subset| x.permute(&p);
        let fa = a.canonical_form(&map, &|i| print(&a, &k, i, &map));
        let fb = b.canonical_form(&|x| x, &|i| print(&b, &moved, i, &|x| x));
        prop_assert_eq!(fa, fb);
    }
}
