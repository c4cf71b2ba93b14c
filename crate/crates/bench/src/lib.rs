//! Benchmark fixtures shared by the criterion targets.

use cutlift_core::{Graph, NamedGraph};

/// Erdős–Rényi graph used as a mid-sized solver workload.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    Graph::named(NamedGraph::ErdosRenyi { p: 0.3, seed }, n).expect("valid parameters")
}
