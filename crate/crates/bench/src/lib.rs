//! Shared fixtures for the benchmarks.

use pcan_core::krg::{sample_graph, Kernel};
use pcan_core::{Graph, NetworkSample};

/// Erdős–Rényi graph `G(n, q)` drawn from a fixed seed.
pub fn erdos_renyi(n: usize, q: f64, seed: u64) -> Graph {
    let kernel = Kernel::constant(q).expect("q in [0, 1]");
    sample_graph(n, &kernel, seed).graph
}

pub fn er_sample(count: usize, n: usize, q: f64, seed: u64) -> NetworkSample {
    let graphs = (0..count)
        .map(|i| erdos_renyi(n, q, seed.wrapping_add(i as u64)))
        .collect();
    NetworkSample::from_graphs(graphs).expect("non-empty sample")
}
