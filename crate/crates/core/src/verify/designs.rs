//! Sample designs shared by the checks, the benches and the tests.

use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::graph::NetworkSample;
use crate::krg::{sample_graph, Kernel};
use crate::rng::{derive_seed, stream};

/// `count` graphs on `n` vertices, all drawn from `kernel`. Graph `i` uses
/// seed `derive_seed(seed, [i])`.
pub fn kernel_sample(kernel: &Kernel, count: usize, n: usize, seed: u64) -> Result<NetworkSample> {
    let graphs = (0..count)
        .into_par_iter()
        .map(|i| sample_graph(n, kernel, derive_seed(seed, &[i as u64])).graph)
        .collect();
    NetworkSample::from_graphs(graphs)
}

/// Erdős–Rényi sample.
pub fn er_sample(count: usize, n: usize, q: f64, seed: u64) -> Result<NetworkSample> {
    kernel_sample(&Kernel::constant(q)?, count, n, seed)
}

/// Per-graph kernel of [`heterogeneous_block_sample`]: a fraction `w` of the
/// vertices never connects and the rest form a dense block with edge
/// probability `a`.
pub fn isolating_block_kernel(w: f64, a: f64) -> Result<Kernel> {
    Kernel::block(vec![vec![0.0, 0.0], vec![0.0, a]], vec![w])
}

/// A sample whose graphs come from different block kernels, so density
/// profiles vary between graphs along two directions (isolated share and
/// within-block density). Graph `i` draws `w ~ U(0.1, 0.5)` and
/// `a ~ U(0.3, 0.9)` from its own stream.
pub fn heterogeneous_block_sample(count: usize, n: usize, seed: u64) -> Result<NetworkSample> {
    let graphs = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, &[i as u64, 0]);
            let w = rng.gen_range(0.1..0.5);
            let a = rng.gen_range(0.3..0.9);
            let kernel = isolating_block_kernel(w, a)?;
            Ok(sample_graph(n, &kernel, derive_seed(seed, &[i as u64, 1])).graph)
        })
        .collect::<Result<Vec<_>>>()?;
    NetworkSample::from_graphs(graphs)
}
