//! Specialized exact counters.
//!
//! All arithmetic is integer; counts accumulate in `u128` so stars on hub
//! vertices cannot wrap.

use std::cell::OnceCell;

use super::config::{ConfigKind, CountMode, SubgraphConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Counting context for one graph. Intermediate results shared between
/// configurations (per-vertex triangle counts) are computed once.
pub struct Census<'g> {
    g: &'g Graph,
    vertex_triangles: OnceCell<Vec<u64>>,
}

impl<'g> Census<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Census {
            g,
            vertex_triangles: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn count(&self, config: SubgraphConfig, mode: CountMode) -> Result<u128> {
        check_fits(self.g, config)?;
        let count = match (config.kind(), mode) {
            (ConfigKind::Isolate, _) => self.isolates(),
            (ConfigKind::Star(1), _) => self.g.edge_count() as u128,
            (ConfigKind::Triangle, _) => self.triangles(),
            (ConfigKind::Star(k), CountMode::Copies) => self.star_copies(k as usize),
            (ConfigKind::Star(2), CountMode::Induced) => self.star_copies(2) - 3 * self.triangles(),
            (ConfigKind::Star(k), CountMode::Induced) => self.induced_stars(k as usize),
            (ConfigKind::Cycle4, CountMode::Copies) => self.cycle4_copies(),
            (ConfigKind::Cycle4, CountMode::Induced) => self.induced_cycle4(),
            (ConfigKind::Cycle5, CountMode::Copies) => self.cycle5_copies(),
            (ConfigKind::Cycle5, CountMode::Induced) => self.induced_cycle5(),
        };
        Ok(count)
    }

    fn isolates(&self) -> u128 {
        self.g.degrees().filter(|&d| d == 0).count() as u128
    }

    fn star_copies(&self, k: usize) -> u128 {
        self.g.degrees().map(|d| binomial(d as u128, k)).sum()
    }

    /// Triangles through each vertex.
    fn vertex_triangles(&self) -> &[u64] {
        self.vertex_triangles.get_or_init(|| {
            let g = self.g;
            let mut t = vec![0u64; g.n()];
            for u in 0..g.n() {
                for &v in g.neighbors(u) {
                    let v = v as usize;
                    if v <= u {
                        continue;
                    }
                    // Scan the shorter list and probe the other endpoint.
                    let (short, other) = if g.degree(u) <= g.degree(v) { (u, v) } else { (v, u) };
                    for &w in g.neighbors(short) {
                        let w = w as usize;
                        if w > v && g.has_edge(other, w) {
                            t[u] += 1;
                            t[v] += 1;
                            t[w] += 1;
                        }
                    }
                }
            }
            t
        })
    }

    fn triangles(&self) -> u128 {
        self.vertex_triangles().iter().map(|&t| t as u128).sum::<u128>() / 3
    }

    /// Each 4-cycle has two diagonals; summing `C(common, 2)` over unordered
    /// vertex pairs counts it once per diagonal.
    fn cycle4_copies(&self) -> u128 {
        let g = self.g;
        let mut common = vec![0u64; g.n()];
        let mut touched = Vec::new();
        let mut total = 0u128;
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                for &w in g.neighbors(v as usize) {
                    let w = w as usize;
                    if w > u {
                        if common[w] == 0 {
                            touched.push(w);
                        }
                        common[w] += 1;
                    }
                }
            }
            for w in touched.drain(..) {
                total += binomial(common[w] as u128, 2);
                common[w] = 0;
            }
        }
        total / 2
    }

    /// Counts closed walks `v0 y1 x z y2 v0` assembled from two 2-paths out of
    /// `v0` joined by the edge `x z`, then removes the walks where `y1 = z`,
    /// `y2 = x` or `y1 = y2`. Every 5-cycle survives once per starting vertex
    /// and direction.
    fn cycle5_copies(&self) -> u128 {
        let g = self.g;
        let tri = self.vertex_triangles();
        let mut paths2 = vec![0u64; g.n()];
        let mut touched = Vec::new();
        let mut total = 0i128;
        for v0 in 0..g.n() {
            for &y in g.neighbors(v0) {
                for &x in g.neighbors(y as usize) {
                    let x = x as usize;
                    if x != v0 {
                        if paths2[x] == 0 {
                            touched.push(x);
                        }
                        paths2[x] += 1;
                    }
                }
            }
            let mut walks = 0i128;
            for &x in &touched {
                let ends: u64 = g.neighbors(x).iter().map(|&z| paths2[z as usize]).sum();
                walks += paths2[x] as i128 * ends as i128;
            }
            let mut first_repeat = 0i128;
            let mut shared_middle = 0i128;
            for &y in g.neighbors(v0) {
                let y = y as usize;
                first_repeat += paths2[y] as i128 * (g.degree(y) as i128 - 1);
                shared_middle += 2 * (tri[y] as i128 - paths2[y] as i128);
            }
            let both_repeat = 2 * tri[v0] as i128;
            total += walks - 2 * first_repeat + both_repeat - shared_middle;
            for x in touched.drain(..) {
                paths2[x] = 0;
            }
        }
        debug_assert!(total >= 0 && total % 10 == 0, "5-cycle walk total {total}");
        (total / 10) as u128
    }

    /// Sum over centers of the independent `k`-subsets of the neighborhood.
    fn induced_stars(&self, k: usize) -> u128 {
        let g = self.g;
        (0..g.n())
            .map(|v| {
                let nbrs: Vec<u32> = g.neighbors(v).to_vec();
                independent_subsets(g, &nbrs, k)
            })
            .sum()
    }

    /// Like [`Self::cycle4_copies`], restricted to non-adjacent diagonal pairs.
    fn induced_cycle4(&self) -> u128 {
        let g = self.g;
        let mut common: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
        let mut touched = Vec::new();
        let mut total = 0u128;
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                for &w in g.neighbors(v as usize) {
                    let w = w as usize;
                    if w > u && !g.has_edge(u, w) {
                        if common[w].is_empty() {
                            touched.push(w);
                        }
                        common[w].push(v);
                    }
                }
            }
            for w in touched.drain(..) {
                let list = std::mem::take(&mut common[w]);
                for (i, &a) in list.iter().enumerate() {
                    for &b in &list[i + 1..] {
                        if !g.has_edge(a as usize, b as usize) {
                            total += 1;
                        }
                    }
                }
                common[w] = list;
                common[w].clear();
            }
        }
        total / 2
    }

    /// Enumerates chordless 5-cycles `v0 v1 v2 v3 v4` with `v0` the smallest
    /// vertex and `v1 < v4`, pruning on chords as the path grows.
    fn induced_cycle5(&self) -> u128 {
        let g = self.g;
        let mut total = 0u128;
        for v0 in 0..g.n() {
            for &v1 in g.neighbors(v0) {
                let v1 = v1 as usize;
                if v1 < v0 {
                    continue;
                }
                for &v2 in g.neighbors(v1) {
                    let v2 = v2 as usize;
                    if v2 <= v0 || g.has_edge(v0, v2) {
                        continue;
                    }
                    for &v3 in g.neighbors(v2) {
                        let v3 = v3 as usize;
                        if v3 < v0 || v3 == v1 || g.has_edge(v1, v3) || g.has_edge(v0, v3) {
                            continue;
                        }
                        for &v4 in g.neighbors(v3) {
                            let v4 = v4 as usize;
                            if v4 > v1
                                && v4 != v2
                                && g.has_edge(v0, v4)
                                && !g.has_edge(v1, v4)
                                && !g.has_edge(v2, v4)
                            {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
        total
    }
}

fn independent_subsets(g: &Graph, candidates: &[u32], k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return candidates.len() as u128;
    }
    if candidates.len() < k {
        return 0;
    }
    let mut total = 0;
    for (i, &a) in candidates.iter().enumerate() {
        let rest: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&b| !g.has_edge(a as usize, b as usize))
            .collect();
        total += independent_subsets(g, &rest, k - 1);
    }
    total
}

pub(crate) fn check_fits(g: &Graph, config: SubgraphConfig) -> Result<()> {
    if g.n() < config.node_count() {
        return Err(Error::ConfigTooLarge {
            config: config.name(),
            needed: config.node_count(),
            n: g.n(),
            graph: g.label().map(str::to_owned),
        });
    }
    Ok(())
}

pub(crate) fn binomial(n: u128, k: usize) -> u128 {
    if (k as u128) > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k as u128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
