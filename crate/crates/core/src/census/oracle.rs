//! Brute-force enumeration oracle.
//!
//! Shares nothing with the specialized counters beyond the adjacency test:
//! every vertex subset of the pattern's size is tried against every
//! bijection from the pattern onto the subset.

use super::config::{ConfigKind, CountMode, SubgraphConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORACLE_MAX_VERTICES: usize = 12;

pub fn brute_force_count(g: &Graph, config: SubgraphConfig, mode: CountMode) -> Result<u128> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::OracleRefused {
            n,
            limit: ORACLE_MAX_VERTICES,
        });
    }
    super::count::check_fits(g, config)?;
    if config.kind() == ConfigKind::Isolate {
        let isolated = (0..n).filter(|&v| (0..n).all(|u| u == v || !g.has_edge(u, v)));
        return Ok(isolated.count() as u128);
    }

    let size = config.node_count();
    let pattern = config.pattern_edges();
    let mut total = 0u128;
    for subset in combinations(n, size) {
        let embeddings = permutations(size)
            .filter(|perm| {
                pattern
                    .iter()
                    .all(|&(a, b)| g.has_edge(subset[perm[a]], subset[perm[b]]))
            })
            .count() as u128;
        match mode {
            CountMode::Copies => {
                assert_eq!(embeddings % config.aut_size() as u128, 0);
                total += embeddings / config.aut_size() as u128;
            }
            CountMode::Induced => {
                let induced_edges = (0..size)
                    .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
                    .filter(|&(i, j)| g.has_edge(subset[i], subset[j]))
                    .count();
                if embeddings > 0 && induced_edges == pattern.len() {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// Automorphisms of the pattern, found by trying every vertex permutation.
pub fn automorphism_count(config: SubgraphConfig) -> u64 {
    let size = config.node_count();
    let edges = config.pattern_edges();
    let has = |a: usize, b: usize| edges.contains(&(a, b)) || edges.contains(&(b, a));
    permutations(size)
        .filter(|perm| edges.iter().all(|&(a, b)| has(perm[a], perm[b])))
        .count() as u64
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let c = current.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// All permutations of `0..k` (Heap's algorithm).
fn permutations(k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut stack = vec![0usize; k];
    let mut first = true;
    let mut i = 1;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(perm.clone());
        }
        while i < k {
            if stack[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(stack[i], i);
                }
                stack[i] += 1;
                i = 1;
                return Some(perm.clone());
            }
            stack[i] = 0;
            i += 1;
        }
        None
    })
}
