//! Small named instances used by tests, the CLI self-check and the docs.

use crate::connectivity::ConnectivityOracle;
use crate::graph::Graph;
use crate::subset::Subset;

/// Three triangles sharing vertex 0. Triangle `i` uses edges `3i..3i+3`.
pub fn triforce_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    Graph::new(7, edges).expect("valid")
}

/// Edge set of triangle `i` (0-based) in [`triforce`].
pub fn triangle(i: usize) -> Subset {
    Subset(0b111 << (3 * i))
}

pub fn triforce() -> ConnectivityOracle {
    ConnectivityOracle::edge_boundary(&triforce_graph()).expect("valid")
}

/// The path a–b–c.
pub fn p3_graph() -> Graph {
    Graph::new(3, vec![(0, 1), (1, 2)]).expect("valid")
}

pub fn p3() -> ConnectivityOracle {
    ConnectivityOracle::edge_boundary(&p3_graph()).expect("valid")
}

pub fn k4_graph() -> Graph {
    Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid")
}

pub fn k4() -> ConnectivityOracle {
    ConnectivityOracle::edge_boundary(&k4_graph()).expect("valid")
}

/// 3×3 grid, vertex `3r + c`.
pub fn grid3_graph() -> Graph {
    let mut edges = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            let v = 3 * r + c;
            if c < 2 {
                edges.push((v, v + 1));
            }
            if r < 2 {
                edges.push((v, v + 3));
            }
        }
    }
    Graph::new(9, edges).expect("valid")
}

pub fn grid3() -> ConnectivityOracle {
    ConnectivityOracle::edge_boundary(&grid3_graph()).expect("valid")
}

pub fn c5_graph() -> Graph {
    Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5)).collect()).expect("valid")
}

pub fn c5_rank() -> ConnectivityOracle {
    ConnectivityOracle::cut_rank(&c5_graph()).expect("valid")
}

/// Render a graph in the instance file format.
pub fn graph_text(g: &Graph) -> String {
    let mut s = format!("graph {} {}\n", g.n, g.m());
    for (u, v) in &g.edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
