//! Plain graphs and GF(2) matrices used to build connectivity functions.

use crate::error::{Error, Result};

/// Undirected multigraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Bit mask of incident edge ids per vertex.
    pub fn incidence_masks(&self) -> Vec<u64> {
        let mut inc = vec![0u64; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u] |= 1 << i;
            inc[v] |= 1 << i;
        }
        inc
    }

    /// Adjacency bit masks (parallel edges collapse, loops ignored).
    pub fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            if u != v {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency_masks();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    /// Vertex-edge incidence matrix over GF(2); its column matroid is the cycle matroid.
    pub fn incidence_matrix(&self) -> Gf2Matrix {
        let mut rows = vec![0u64; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                rows[u] |= 1 << i;
                rows[v] |= 1 << i;
            }
        }
        Gf2Matrix { rows: self.n, cols: self.m(), data: rows }
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Graph {
        Graph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
        }
    }
}

/// Dense matrix over GF(2); row `r` stores column bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Result<Gf2Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix must be nonempty".into()));
        }
        if rows > 64 || cols > 64 {
            return Err(Error::Unsupported("matrices are limited to 64 rows and 64 columns".into()));
        }
        if data.len() != rows {
            return Err(Error::Domain("row count mismatch".into()));
        }
        let colmask = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
        if data.iter().any(|r| r & !colmask != 0) {
            return Err(Error::Domain("row has bits beyond the column count".into()));
        }
        Ok(Gf2Matrix { rows, cols, data })
    }

    /// Column vectors as row-bit masks.
    pub fn columns(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, col) in cols.iter_mut().enumerate() {
                if row >> c & 1 == 1 {
                    *col |= 1 << r;
                }
            }
        }
        cols
    }
}

/// Rank over GF(2) of a list of bit vectors. Pivot = lowest set bit.
pub fn gf2_rank<I: IntoIterator<Item = u64>>(vectors: I) -> u32 {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if basis[p] == 0 {
                basis[p] = v;
                rank += 1;
                break;
            }
            v ^= basis[p];
        }
    }
    rank
}
