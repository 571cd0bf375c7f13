//! Random vertex partitions with a minimum class size.
//!
//! Labels are drawn i.i.d. uniformly over `K` classes and the whole draw is
//! rejected whenever some class ends up smaller than `tau`. An attempt is
//! abandoned as soon as the classes still short of `tau` need more vertices
//! than remain to be drawn; that event already implies rejection, so the
//! accepted law is unchanged. After [`REJECTION_ATTEMPTS`] failures the plan
//! is built constructively instead.

use rand::seq::SliceRandom;
use rand::distributions::{Distribution, Uniform};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, StreamRng};

pub const REJECTION_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMethod {
    /// Accepted i.i.d. multinomial draw.
    Rejection,
    /// Shuffle, deal `K * tau` vertices round-robin, then draw the rest.
    Constructive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPlan {
    /// Class of each vertex, in `0..k`.
    pub assignment: Vec<usize>,
    pub k: usize,
    pub tau: usize,
    pub seed: u64,
    pub method: PartitionMethod,
    /// Rejection attempts made before the plan was fixed.
    pub attempts: usize,
}

impl PartitionPlan {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each class in ascending vertex order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

/// Partitions the vertices of `g` into `k` classes of size at least `tau`
/// and returns the plan with the induced subgraph of each class.
///
/// When `k * tau == n` every class is forced to size exactly `tau`. The
/// accepted multinomial draw is then a uniform equal-size partition, which is
/// what the constructive scheme produces, so it is used directly.
pub fn partition(g: &Graph, k: usize, tau: usize, seed: u64) -> Result<(PartitionPlan, Vec<Graph>)> {
    let n = g.n();
    if k == 0 || tau == 0 {
        return Err(Error::invalid("partition needs K >= 1 and tau >= 1"));
    }
    if k.checked_mul(tau).is_none_or(|need| need > n) {
        return Err(Error::PartitionInfeasible { k, tau, n });
    }

    let mut rng = rng_from_seed(seed);
    let mut assignment = vec![0usize; n];
    let mut attempts = 0;
    let mut method = PartitionMethod::Constructive;
    if k * tau < n {
        while attempts < REJECTION_ATTEMPTS {
            attempts += 1;
            if try_multinomial(&mut rng, &mut assignment, k, tau) {
                method = PartitionMethod::Rejection;
                break;
            }
        }
    }
    if method == PartitionMethod::Constructive {
        constructive(&mut rng, &mut assignment, k, tau);
    }

    let plan = PartitionPlan {
        assignment,
        k,
        tau,
        seed,
        method,
        attempts,
    };
    let sizes = plan.class_sizes();
    assert!(
        sizes.iter().all(|&s| s >= tau),
        "partition class below tau: {sizes:?}"
    );
    let parts = induce_classes(g, &plan);
    Ok((plan, parts))
}

fn try_multinomial(rng: &mut StreamRng, assignment: &mut [usize], k: usize, tau: usize) -> bool {
    let n = assignment.len();
    let mut sizes = vec![0usize; k];
    let mut deficit = k * tau;
    let label = Uniform::new(0, k as u32);
    for (drawn, slot) in assignment.iter_mut().enumerate() {
        let c = label.sample(rng) as usize;
        *slot = c;
        if sizes[c] < tau {
            deficit -= 1;
        }
        sizes[c] += 1;
        if deficit > n - drawn - 1 {
            return false;
        }
    }
    true
}

fn constructive(rng: &mut StreamRng, assignment: &mut [usize], k: usize, tau: usize) {
    let mut order: Vec<usize> = (0..assignment.len()).collect();
    order.shuffle(rng);
    let dealt = k * tau;
    let label = Uniform::new(0, k as u32);
    for (pos, &v) in order.iter().enumerate() {
        assignment[v] = if pos < dealt { pos % k } else { label.sample(rng) as usize };
    }
}

/// Builds all class subgraphs in one pass over the edges.
fn induce_classes(g: &Graph, plan: &PartitionPlan) -> Vec<Graph> {
    let mut local = vec![0u32; g.n()];
    let mut sizes = vec![0u32; plan.k];
    for (v, &c) in plan.assignment.iter().enumerate() {
        local[v] = sizes[c];
        sizes[c] += 1;
    }
    let mut pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); plan.k];
    for (u, v) in g.edges() {
        let c = plan.assignment[u];
        if plan.assignment[v] == c {
            // Local indices preserve vertex order, so `u < v` carries over and
            // edges arrive sorted.
            pairs[c].push((local[u], local[v]));
        }
    }
    pairs
        .iter()
        .zip(&sizes)
        .map(|(p, &s)| Graph::from_sorted_pairs(s as usize, p))
        .collect()
}
