//! Tangles of connectivity functions.
//!
//! A connectivity function is a symmetric submodular `κ: 2^U → N` with
//! `κ(∅) = 0`. This crate computes all tangles of `κ` up to a fixed order,
//! stores them in a queryable [`TangleDataStructure`], and builds canonical
//! tree decompositions that separate them. Everything is exact and aimed at
//! small ground sets (a few dozen elements at most, typically ≤ 16).

pub mod bases;
pub mod connectivity;
pub mod decomposition;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod separations;
pub mod subset;
pub mod tangle_ds;
pub mod tangles;

pub use bases::Base;
pub use connectivity::ConnectivityOracle;
pub use decomposition::{
    DirectedTreeDecomposition, PartialDecomposition, TangleTreeDecomposition, TreeDecomposition,
};
pub use error::{Error, Result};
pub use graph::{Gf2Matrix, Graph};
pub use subset::{GroundSet, Subset};
pub use tangle_ds::TangleDataStructure;
pub use tangles::{Engine, ExplicitTangle, Tangle, TangleMembership};
