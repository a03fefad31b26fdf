//! Partial decompositions, nested families and the canonical, refined and
//! directed tree decompositions.

mod canonical;
mod directed;
mod partial;
mod tree;
mod verify;

pub use canonical::{
    assign_tangle_nodes, canonical_decomposition, coherent_nested_family, maximal_counts_per_node, project_tangle,
    refine_single_tangle, Contraction, ProjectedTangle, TangleTreeDecomposition,
};
pub use directed::{directed_decomposition, directed_from, DirectedTreeDecomposition};
pub use partial::{exactify, PartialDecomposition};
pub use tree::{check_nested, nested_pair, nested_to_tree, TreeDecomposition};
pub use verify::{verify_directed, verify_tangle_decomposition, VerificationReport, Violation};
