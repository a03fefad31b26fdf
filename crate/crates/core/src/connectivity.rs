//! Connectivity-function oracles, the built-in instances and axiom checks.

use std::fmt;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{gf2_rank, Gf2Matrix, Graph};
use crate::subset::{GroundSet, Subset};

/// Ground sets up to this size get a full memo table.
pub const MEMO_LIMIT: usize = 24;

/// Default size for exhaustive axiom checks.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 12;

/// Above the exhaustive bound, axioms are sampled up to this size.
pub const SAMPLED_AXIOM_LIMIT: usize = 20;

pub const AXIOM_SAMPLE_SEED: u64 = 0x5eed_0f_7a6e;
const AXIOM_SAMPLES: usize = 200_000;

type EvalFn = dyn Fn(Subset) -> u32 + Send + Sync;

/// Oracle access to a connectivity function `κ: 2^U → N`.
///
/// Immutable apart from the call counter and the memo table, both of which
/// are safe to share between threads.
pub struct ConnectivityOracle {
    ground: GroundSet,
    name: String,
    eval: Arc<EvalFn>,
    calls: AtomicU64,
    memo_enabled: bool,
    // value + 1, zero means unknown
    memo: OnceLock<Box<[AtomicU32]>>,
}

impl fmt::Debug for ConnectivityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConnectivityOracle")
            .field("name", &self.name)
            .field("n", &self.ground.len())
            .field("calls", &self.calls())
            .finish()
    }
}

impl ConnectivityOracle {
    /// Wrap an evaluation function. The function must be a connectivity
    /// function; use [`verify_axioms`] to check.
    pub fn from_fn<F>(ground: GroundSet, name: impl Into<String>, f: F) -> ConnectivityOracle
    where
        F: Fn(Subset) -> u32 + Send + Sync + 'static,
    {
        let memo_enabled = ground.len() <= MEMO_LIMIT;
        ConnectivityOracle {
            ground,
            name: name.into(),
            eval: Arc::new(f),
            calls: AtomicU64::new(0),
            memo_enabled,
            memo: OnceLock::new(),
        }
    }

    /// Shift a symmetric submodular function so that it vanishes on the empty set.
    pub fn normalize<F>(ground: GroundSet, name: impl Into<String>, raw: F) -> ConnectivityOracle
    where
        F: Fn(Subset) -> i64 + Send + Sync + 'static,
    {
        let base = raw(Subset::EMPTY);
        ConnectivityOracle::from_fn(ground, name, move |x| {
            let v = raw(x) - base;
            assert!(v >= 0, "input is not symmetric submodular: value below the empty set");
            v as u32
        })
    }

    pub fn without_memo(mut self) -> ConnectivityOracle {
        self.memo_enabled = false;
        self
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.len()
    }

    #[inline]
    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    #[inline]
    pub fn complement(&self, x: Subset) -> Subset {
        x.complement(self.full())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of evaluations that were not answered from the memo.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn memoized(&self) -> bool {
        self.memo_enabled
    }

    /// Checked evaluation.
    pub fn evaluate(&self, x: Subset) -> Result<u32> {
        self.ground.check(x)?;
        Ok(self.value(x))
    }

    /// Unchecked evaluation for internal hot loops.
    #[inline]
    pub fn value(&self, x: Subset) -> u32 {
        debug_assert!(x.is_subset(self.full()));
        if !self.memo_enabled {
            self.calls.fetch_add(1, Ordering::Relaxed);
            return (self.eval)(x);
        }
        let memo = self.memo.get_or_init(|| {
            (0..1usize << self.n()).map(|_| AtomicU32::new(0)).collect()
        });
        let slot = &memo[x.0 as usize];
        let cached = slot.load(Ordering::Relaxed);
        if cached != 0 {
            return cached - 1;
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        let v = (self.eval)(x);
        slot.store(v + 1, Ordering::Relaxed);
        v
    }

    /// The same function with elements renamed: the new oracle satisfies
    /// `κ'(perm(X)) = κ(X)`.
    pub fn relabel(this: &Arc<ConnectivityOracle>, perm: &[usize]) -> Result<ConnectivityOracle> {
        let n = this.n();
        if perm.len() != n {
            return Err(Error::Domain("permutation length mismatch".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Domain("not a permutation".into()));
            }
            inv[p] = i;
        }
        let labels = this.ground.labels().map(|l| (0..n).map(|j| l[inv[j]].clone()).collect());
        let ground = match labels {
            Some(l) => GroundSet::with_labels(l)?,
            None => GroundSet::new(n)?,
        };
        let inner = Arc::clone(this);
        Ok(ConnectivityOracle::from_fn(ground, format!("{}∘π", this.name), move |x| {
            inner.value(x.permute(&inv))
        }))
    }

    /// Edge-boundary function of a graph over its edge set.
    pub fn edge_boundary(g: &Graph) -> Result<ConnectivityOracle> {
        let labels = g.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let ground = GroundSet::with_labels(labels)?;
        let full = ground.full().0;
        let inc: Vec<u64> = g.incidence_masks().into_iter().filter(|&m| m != 0).collect();
        Ok(ConnectivityOracle::from_fn(ground, "edge-boundary", move |x| {
            let inside = x.0;
            let outside = full & !inside;
            inc.iter().filter(|&&m| m & inside != 0 && m & outside != 0).count() as u32
        }))
    }

    /// Number of edges between `X` and its complement, over the vertex set.
    pub fn vertex_cut(g: &Graph) -> Result<ConnectivityOracle> {
        let ground = GroundSet::new(g.n)?;
        let edges: Vec<(u64, u64)> = g.edges.iter().map(|&(u, v)| (1u64 << u, 1u64 << v)).collect();
        Ok(ConnectivityOracle::from_fn(ground, "vertex-cut", move |x| {
            edges
                .iter()
                .filter(|&&(a, b)| (x.0 & a != 0) != (x.0 & b != 0))
                .count() as u32
        }))
    }

    /// GF(2) rank of the `X × X̄` adjacency matrix, over the vertex set.
    pub fn cut_rank(g: &Graph) -> Result<ConnectivityOracle> {
        let ground = GroundSet::new(g.n)?;
        let full = ground.full().0;
        let adj = g.adjacency_masks();
        Ok(ConnectivityOracle::from_fn(ground, "cut-rank", move |x| {
            let outside = full & !x.0;
            gf2_rank(x.iter().map(|v| adj[v] & outside))
        }))
    }

    /// Matroid connectivity `r(X) + r(X̄) − r(E)` of the column matroid.
    pub fn matroid(m: &Gf2Matrix) -> Result<ConnectivityOracle> {
        let ground = GroundSet::new(m.cols)?;
        let full = ground.full();
        let cols = m.columns();
        let rank = move |x: Subset| gf2_rank(x.iter().map(|c| cols[c])) as i64;
        Ok(ConnectivityOracle::normalize(ground, "matroid", move |x| {
            rank(x) + rank(x.complement(full)) - rank(full)
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomMode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    EmptyNonzero { value: u32 },
    Asymmetric { x: Subset, value: u32, complement_value: u32 },
    NotSubmodular { x: Subset, y: Subset },
    NotPosimodular { x: Subset, y: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub mode: AxiomMode,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check `κ(∅)=0`, symmetry, submodularity and posimodularity.
///
/// Exhaustive up to `bound` elements, sampled with a fixed seed up to
/// [`SAMPLED_AXIOM_LIMIT`], refused above that.
pub fn verify_axioms(k: &ConnectivityOracle, bound: usize) -> Result<AxiomReport> {
    let n = k.n();
    let full = k.full();
    let e = k.value(Subset::EMPTY);
    let mut report = AxiomReport { n, mode: AxiomMode::Exhaustive, violation: None };
    if e != 0 {
        report.violation = Some(AxiomViolation::EmptyNonzero { value: e });
        return Ok(report);
    }
    let pair = |x: Subset, y: Subset| -> Option<AxiomViolation> {
        let (a, b) = (k.value(x) as i64, k.value(y) as i64);
        if a + b < k.value(x.intersect(y)) as i64 + k.value(x.union(y)) as i64 {
            return Some(AxiomViolation::NotSubmodular { x, y });
        }
        if a + b < k.value(x.minus(y)) as i64 + k.value(y.minus(x)) as i64 {
            return Some(AxiomViolation::NotPosimodular { x, y });
        }
        None
    };
    let sym = |x: Subset| -> Option<AxiomViolation> {
        let (a, b) = (k.value(x), k.value(x.complement(full)));
        (a != b).then_some(AxiomViolation::Asymmetric { x, value: a, complement_value: b })
    };
    if n <= bound {
        for x in full.submasks() {
            if let Some(v) = sym(x) {
                report.violation = Some(v);
                return Ok(report);
            }
        }
        let table: Vec<i64> = (0..1u64 << n).map(|x| k.value(Subset(x)) as i64).collect();
        for x in 0..1u64 << n {
            for y in x..1u64 << n {
                let s = table[x as usize] + table[y as usize];
                if s < table[(x & y) as usize] + table[(x | y) as usize] {
                    report.violation = Some(AxiomViolation::NotSubmodular { x: Subset(x), y: Subset(y) });
                    return Ok(report);
                }
                if s < table[(x & !y) as usize] + table[(y & !x) as usize] {
                    report.violation =
                        Some(AxiomViolation::NotPosimodular { x: Subset(x), y: Subset(y) });
                    return Ok(report);
                }
            }
        }
        return Ok(report);
    }
    if n > SAMPLED_AXIOM_LIMIT {
        return Err(Error::SizeGuard { guard: "axiom-check", actual: n, limit: SAMPLED_AXIOM_LIMIT });
    }
    report.mode = AxiomMode::Sampled { seed: AXIOM_SAMPLE_SEED, samples: AXIOM_SAMPLES };
    let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
    for _ in 0..AXIOM_SAMPLES {
        let x = Subset(rng.gen::<u64>() & full.0);
        let y = Subset(rng.gen::<u64>() & full.0);
        let z = Subset(rng.gen::<u64>() & full.0);
        if let Some(v) = sym(x).or_else(|| pair(x, y)).or_else(|| pair(y, z)).or_else(|| pair(x, z)) {
            report.violation = Some(v);
            return Ok(report);
        }
    }
    Ok(report)
}
