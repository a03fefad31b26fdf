//! Instance files, decomposition JSON and DOT export.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connectivity::ConnectivityOracle;
use crate::decomposition::{DirectedTreeDecomposition, TangleTreeDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Gf2Matrix, Graph};
use crate::subset::{Subset, MAX_ELEMENTS};
use crate::tangle_ds::TangleDataStructure;

/// Which connectivity function to build from an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FnKind {
    EdgeBoundary,
    VertexCut,
    CutRank,
    Matroid,
}

impl FromStr for FnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FnKind> {
        match s {
            "edge-boundary" => Ok(FnKind::EdgeBoundary),
            "vertex-cut" => Ok(FnKind::VertexCut),
            "cut-rank" => Ok(FnKind::CutRank),
            "matroid" => Ok(FnKind::Matroid),
            _ => Err(Error::Domain(format!("unknown function '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Matrix(Gf2Matrix),
}

impl Instance {
    /// The connectivity function of kind `f`. Graphs support all four (the
    /// matroid of a graph is its cycle matroid), matrices only `matroid`.
    pub fn oracle(&self, f: FnKind) -> Result<ConnectivityOracle> {
        match (self, f) {
            (Instance::Graph(g), FnKind::EdgeBoundary) => ConnectivityOracle::edge_boundary(g),
            (Instance::Graph(g), FnKind::VertexCut) => ConnectivityOracle::vertex_cut(g),
            (Instance::Graph(g), FnKind::CutRank) => ConnectivityOracle::cut_rank(g),
            (Instance::Graph(g), FnKind::Matroid) => ConnectivityOracle::matroid(&g.incidence_matrix()),
            (Instance::Matrix(m), FnKind::Matroid) => ConnectivityOracle::matroid(m),
            (Instance::Matrix(_), f) => Err(Error::Unsupported(format!("{f:?} needs a graph instance"))),
        }
    }

    /// The function implied by the file when none is requested.
    pub fn default_fn(&self) -> FnKind {
        match self {
            Instance::Graph(_) => FnKind::EdgeBoundary,
            Instance::Matrix(_) => FnKind::Matroid,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parse an instance file. Blank lines and text after `#` are ignored.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return Err(parse_err(1, "empty instance"));
    };
    let words: Vec<&str> = header.split_whitespace().collect();
    let num = |w: &str, what: &str, line: usize| -> Result<usize> {
        w.parse().map_err(|_| parse_err(line, format!("{what} '{w}' is not a number")))
    };
    match words.as_slice() {
        ["graph", n, m] => {
            let (n, m) = (num(n, "vertex count", hl)?, num(m, "edge count", hl)?);
            let mut edges = Vec::with_capacity(m);
            let mut last = hl;
            for (ln, l) in lines.by_ref().take(m) {
                last = ln;
                let w: Vec<&str> = l.split_whitespace().collect();
                let [u, v] = w.as_slice() else {
                    return Err(parse_err(ln, "expected an edge '<u> <v>'"));
                };
                let (u, v) = (num(u, "vertex", ln)?, num(v, "vertex", ln)?);
                if u >= n || v >= n {
                    return Err(parse_err(ln, format!("vertex out of range 0..{n}")));
                }
                edges.push((u, v));
            }
            if edges.len() < m {
                return Err(parse_err(last + 1, format!("expected {m} edges, found {}", edges.len())));
            }
            if let Some((ln, _)) = lines.next() {
                return Err(parse_err(ln, "unexpected line after the last edge"));
            }
            Graph::new(n, edges).map(Instance::Graph)
        }
        ["matrix", r, c] => {
            let (r, c) = (num(r, "row count", hl)?, num(c, "column count", hl)?);
            if c > MAX_ELEMENTS {
                return Err(Error::Unsupported(format!("{c} columns, at most {MAX_ELEMENTS} are supported")));
            }
            let mut rows = Vec::with_capacity(r);
            let mut last = hl;
            for (ln, l) in lines.by_ref().take(r) {
                last = ln;
                let bits: String = l.chars().filter(|ch| !ch.is_whitespace()).collect();
                if bits.len() != c || bits.chars().any(|ch| ch != '0' && ch != '1') {
                    return Err(parse_err(ln, format!("expected a row of {c} digits 0 or 1")));
                }
                rows.push(bits.chars().enumerate().filter(|(_, ch)| *ch == '1').fold(0u64, |a, (i, _)| a | 1 << i));
            }
            if rows.len() < r {
                return Err(parse_err(last + 1, format!("expected {r} rows, found {}", rows.len())));
            }
            if let Some((ln, _)) = lines.next() {
                return Err(parse_err(ln, "unexpected line after the last row"));
            }
            Gf2Matrix::new(r, c, rows).map(Instance::Matrix)
        }
        _ => Err(parse_err(hl, "expected 'graph <n> <m>' or 'matrix <rows> <cols>'")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeJson {
    pub id: usize,
    pub kind: String,
    pub bag: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tangle_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tangle_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cone: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub a: usize,
    pub b: usize,
    /// The elements on `b`'s side; for directed output `a` is the parent.
    pub separation: Vec<usize>,
    pub order: u32,
}

/// Decomposition document; `variant` is `canonical`, `refined` or `directed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionJson {
    pub version: u32,
    pub variant: String,
    pub order: u32,
    pub ground_size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub root: Option<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

pub const JSON_VERSION: u32 = 1;

impl DecompositionJson {
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<DecompositionJson> {
        let d: DecompositionJson = serde_json::from_str(text)
            .map_err(|e| parse_err(e.line(), format!("decomposition JSON: {e}")))?;
        if d.version != JSON_VERSION {
            return Err(Error::Unsupported(format!("decomposition JSON version {}", d.version)));
        }
        Ok(d)
    }
}

fn ids(x: Subset) -> Vec<usize> {
    x.to_vec()
}

fn set_of(ids: &[usize], n: usize) -> Result<Subset> {
    if let Some(&i) = ids.iter().find(|&&i| i >= n) {
        return Err(Error::Domain(format!("element {i} outside a ground set of {n}")));
    }
    Ok(Subset::from_ids(ids.iter().copied()))
}

/// New ids for nodes sorted by `key`, ties by old id.
fn renumber<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(a).cmp(&key(b)).then(a.cmp(&b)));
    let mut new_id = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    new_id
}

fn tree_json(
    k: &ConnectivityOracle,
    td: &TreeDecomposition,
    variant: &str,
    order: u32,
    tangle_at: &dyn Fn(usize) -> Option<(usize, u32)>,
) -> DecompositionJson {
    let new_id = renumber(td.len(), |v| {
        let mut around: Vec<Vec<usize>> = td.neighbors(v).iter().map(|&w| ids(td.side(v, w))).collect();
        around.sort();
        (ids(td.bag(v)), around)
    });
    let mut nodes: Vec<NodeJson> = (0..td.len())
        .map(|v| {
            let t = tangle_at(v);
            NodeJson {
                id: new_id[v],
                kind: if t.is_some() { "tangle" } else { "hub" }.into(),
                bag: ids(td.bag(v)),
                tangle_order: t.map(|(_, o)| o),
                tangle_index: t.map(|(i, _)| i),
                cone: None,
            }
        })
        .collect();
    nodes.sort_by_key(|n| n.id);
    let mut edges: Vec<EdgeJson> = td
        .edges()
        .into_iter()
        .map(|(s, t)| {
            let (a, b) = if new_id[s] < new_id[t] { (s, t) } else { (t, s) };
            let sep = td.side(a, b);
            EdgeJson { a: new_id[a], b: new_id[b], separation: ids(sep), order: k.value(sep) }
        })
        .collect();
    edges.sort_by_key(|e| (e.a, e.b));
    DecompositionJson {
        version: JSON_VERSION,
        variant: variant.into(),
        order,
        ground_size: k.n(),
        root: None,
        nodes,
        edges,
    }
}

pub fn canonical_json(ttd: &TangleTreeDecomposition) -> Result<DecompositionJson> {
    let ds = ttd.ds();
    let k = ds.engine().oracle();
    let mut orders = Vec::new();
    for &(i, v) in &ttd.tau {
        orders.push((v, i, ds.order(i)?));
    }
    let at = |v: usize| orders.iter().find(|o| o.0 == v).map(|o| (o.1, o.2));
    Ok(tree_json(k, &ttd.tree, "canonical", ttd.order, &at))
}

/// A refined decomposition; tangle nodes are marked where the maximal
/// tangles can still be placed on single nodes.
pub fn refined_json(ds: &TangleDataStructure, td: &TreeDecomposition, order: u32) -> Result<DecompositionJson> {
    let k = ds.engine().oracle();
    let maximal = ds.maximal(order)?;
    let tau = crate::decomposition::assign_tangle_nodes(ds, td, &maximal).unwrap_or_default();
    let mut orders = Vec::new();
    for &(i, v) in &tau {
        orders.push((v, i, ds.order(i)?));
    }
    let at = |v: usize| orders.iter().find(|o| o.0 == v).map(|o| (o.1, o.2));
    Ok(tree_json(k, td, "refined", order, &at))
}

pub fn directed_json(d: &DirectedTreeDecomposition) -> Result<DecompositionJson> {
    let ds = d.ds();
    let k = ds.engine().oracle();
    let new_id = renumber(d.len(), |v| (ids(d.bag(v)), ids(d.cones[v])));
    let mut nodes = Vec::with_capacity(d.len());
    for v in 0..d.len() {
        nodes.push(NodeJson {
            id: new_id[v],
            kind: "tangle".into(),
            bag: ids(d.bag(v)),
            tangle_order: Some(ds.order(d.tangles[v])?),
            tangle_index: Some(d.tangles[v]),
            cone: Some(ids(d.cones[v])),
        });
    }
    nodes.sort_by_key(|n| n.id);
    let mut edges: Vec<EdgeJson> = (0..d.len())
        .filter_map(|v| {
            d.parent[v].map(|p| EdgeJson {
                a: new_id[p],
                b: new_id[v],
                separation: ids(d.cones[v]),
                order: k.value(d.cones[v]),
            })
        })
        .collect();
    edges.sort_by_key(|e| (e.a, e.b));
    Ok(DecompositionJson {
        version: JSON_VERSION,
        variant: "directed".into(),
        order: d.order,
        ground_size: k.n(),
        root: Some(new_id[d.root]),
        nodes,
        edges,
    })
}

/// Rebuild a canonical or refined decomposition over `ds` from its JSON.
pub fn tangle_decomposition_from_json(ds: &TangleDataStructure, doc: &DecompositionJson) -> Result<TangleTreeDecomposition> {
    let n = ds.engine().oracle().n();
    if doc.ground_size != n {
        return Err(Error::Domain(format!("document has {} elements, instance has {n}", doc.ground_size)));
    }
    check_ids(doc)?;
    let bags = doc.nodes.iter().map(|v| set_of(&v.bag, n)).collect::<Result<Vec<_>>>()?;
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e.a, e.b)).collect();
    let td = TreeDecomposition::new(Subset::full(n), bags, &edges)?;
    for e in &doc.edges {
        if td.side(e.a, e.b) != set_of(&e.separation, n)? {
            return Err(Error::Domain(format!("edge ({}, {}) lists the wrong separation", e.a, e.b)));
        }
    }
    let tau: Vec<(usize, usize)> = doc.nodes.iter().filter_map(|v| v.tangle_index.map(|i| (i, v.id))).collect();
    for &(i, _) in &tau {
        if i >= ds.len() {
            return Err(Error::IndexOutOfRange { index: i, size: ds.len() });
        }
    }
    Ok(TangleTreeDecomposition::new(td, doc.order, tau, ds.clone()))
}

/// Rebuild a directed decomposition over `ds` from its JSON.
pub fn directed_from_json(ds: &TangleDataStructure, doc: &DecompositionJson) -> Result<DirectedTreeDecomposition> {
    let n = ds.engine().oracle().n();
    if doc.ground_size != n {
        return Err(Error::Domain(format!("document has {} elements, instance has {n}", doc.ground_size)));
    }
    check_ids(doc)?;
    let m = doc.nodes.len();
    let mut parent = vec![None; m];
    for e in &doc.edges {
        if e.a >= m || e.b >= m || parent[e.b].is_some() {
            return Err(Error::Domain(format!("edge ({}, {}) is not a parent link", e.a, e.b)));
        }
        parent[e.b] = Some(e.a);
    }
    let mut cones = Vec::with_capacity(m);
    let mut tangles = Vec::with_capacity(m);
    for v in &doc.nodes {
        let cone = v.cone.as_ref().ok_or_else(|| Error::Domain(format!("node {} has no cone", v.id)))?;
        cones.push(set_of(cone, n)?);
        let i = v.tangle_index.ok_or_else(|| Error::Domain(format!("node {} has no tangle", v.id)))?;
        if i >= ds.len() {
            return Err(Error::IndexOutOfRange { index: i, size: ds.len() });
        }
        tangles.push(i);
    }
    DirectedTreeDecomposition::new(parent, cones, tangles, doc.order, ds.clone())
}

fn check_ids(doc: &DecompositionJson) -> Result<()> {
    if doc.nodes.iter().enumerate().any(|(i, v)| v.id != i) {
        return Err(Error::Domain("node ids must be 0, 1, .. in order".into()));
    }
    Ok(())
}

/// Graphviz rendering of a decomposition document. Elements are shown by
/// their labels in `k`.
pub fn to_dot(doc: &DecompositionJson, k: &ConnectivityOracle) -> String {
    let names = |v: &[usize]| v.iter().map(|&i| k.ground().label(i)).collect::<Vec<_>>().join(",");
    let directed = doc.variant == "directed";
    let mut s = String::new();
    let _ = writeln!(s, "{} decomposition {{", if directed { "digraph" } else { "graph" });
    for v in &doc.nodes {
        let head = match (v.tangle_index, v.tangle_order) {
            (Some(i), Some(o)) => format!("tangle {i} (order {o})"),
            _ => "hub".to_string(),
        };
        let mut label = format!("{head}\\nbag {{{}}}", names(&v.bag));
        if let Some(c) = &v.cone {
            let _ = write!(label, "\\ncone {{{}}}", names(c));
        }
        let shape = if v.kind == "hub" { "circle" } else { "box" };
        let _ = writeln!(s, "  n{} [shape={shape}, label=\"{label}\"];", v.id);
    }
    let arrow = if directed { "->" } else { "--" };
    for e in &doc.edges {
        let _ = writeln!(s, "  n{} {arrow} n{} [label=\"{}\"];", e.a, e.b, e.order);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_graphs_and_matrices() {
        let g = parse_instance(&fixtures::graph_text(&fixtures::triforce_graph())).unwrap();
        let k = g.oracle(FnKind::EdgeBoundary).unwrap();
        assert_eq!(k.n(), 9);
        let m = parse_instance("# two rows\nmatrix 2 4\n1100\n0 1 1 1\n").unwrap();
        assert_eq!(m.oracle(FnKind::Matroid).unwrap().n(), 4);
        assert!(m.oracle(FnKind::CutRank).is_err());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let line = |t: &str| match parse_instance(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line(""), 1);
        assert_eq!(line("graph 3 2\n0 1\n\n1 x\n"), 4);
        assert_eq!(line("graph 3 2\n0 1\n"), 3);
        assert_eq!(line("matrix 1 3\n102\n"), 2);
        assert_eq!(line("tree 3\n"), 1);
        assert!(matches!(
            parse_instance("matrix 1 65\n"),
            Err(Error::Unsupported(_))
        ));
    }
}
