//! Simple undirected graphs, network samples and vertex partitions.

mod io;
mod partition;

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use io::{
    load_edge_list, load_manifest, parse_edge_list, write_edge_list, LoadReport, LoadedGraph,
};
pub use partition::{partition, PartitionMethod, PartitionPlan, REJECTION_ATTEMPTS};

/// Graphs up to this many vertices keep a dense adjacency bit matrix.
const DENSE_ADJACENCY_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
enum AdjacencyIndex {
    Dense { words: usize, bits: Vec<u64> },
    Sparse(HashSet<u64>),
}

impl AdjacencyIndex {
    fn build(n: usize, offsets: &[usize], targets: &[u32]) -> Self {
        if n <= DENSE_ADJACENCY_LIMIT {
            let words = n.div_ceil(64);
            let mut bits = vec![0u64; words * n];
            for u in 0..n {
                for &v in &targets[offsets[u]..offsets[u + 1]] {
                    let v = v as usize;
                    bits[u * words + v / 64] |= 1 << (v % 64);
                }
            }
            AdjacencyIndex::Dense { words, bits }
        } else {
            let mut set = HashSet::with_capacity(targets.len() / 2);
            for u in 0..n {
                for &v in &targets[offsets[u]..offsets[u + 1]] {
                    if (u as u32) < v {
                        set.insert(pack(u as u32, v));
                    }
                }
            }
            AdjacencyIndex::Sparse(set)
        }
    }

    #[inline]
    fn contains(&self, u: usize, v: usize) -> bool {
        match self {
            AdjacencyIndex::Dense { words, bits } => bits[u * words + v / 64] >> (v % 64) & 1 == 1,
            AdjacencyIndex::Sparse(set) => {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                set.contains(&pack(a as u32, b as u32))
            }
        }
    }
}

#[inline]
fn pack(a: u32, b: u32) -> u64 {
    (a as u64) << 32 | b as u64
}

/// Counts of malformed edges dropped while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are stored in compressed form and sorted by index.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    adjacency: AdjacencyIndex,
    label: Option<String>,
    names: Option<Arc<Vec<String>>>,
}

impl Graph {
    /// Builds a graph from an edge iterator, dropping self-loops and repeated
    /// edges. Either orientation of an edge counts as the same edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Graph, EdgeReport)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut report = EdgeReport::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            pairs.push(if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) });
        }
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        report.duplicates = before - pairs.len();
        Ok((Graph::from_sorted_pairs(n, &pairs), report))
    }

    /// `pairs` must be sorted, deduplicated and satisfy `u < v`.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Graph {
        let mut degrees = vec![0usize; n];
        for &(u, v) in pairs {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degrees {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Sorted input means each list is filled in ascending order: a vertex's
        // smaller neighbors arrive (as `v`) before its larger ones (as `u`).
        for &(u, v) in pairs {
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for &(u, v) in pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
        }
        let adjacency = AdjacencyIndex::build(n, &offsets, &targets);
        Graph {
            offsets,
            targets,
            adjacency,
            label: None,
            names: None,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted_pairs(n, &[])
    }

    pub fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        Graph::from_sorted_pairs(n, &pairs)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_sorted_pairs(n, &pairs)
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (0..n).map(|v| (v, (v + 1) % n));
        Graph::from_edges(n, edges).expect("valid cycle").0
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Attaches external vertex names; `names.len()` must equal `n`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} vertex names for a graph with {} vertices",
                names.len(),
                self.n()
            )));
        }
        self.names = Some(Arc::new(names));
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.contains(u, v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// External name of vertex `v`, if the graph was loaded from named tokens.
    pub fn vertex_name(&self, v: usize) -> Option<&str> {
        self.names.as_ref().map(|names| names[v].as_str())
    }

    /// The subgraph induced by `vertices`, reindexed so that `vertices[i]`
    /// becomes vertex `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::invalid("induced subgraph needs at least one vertex"));
        }
        let n = self.n();
        let mut local = vec![u32::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if local[v] != u32::MAX {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
            local[v] = i as u32;
        }
        let mut pairs = Vec::new();
        for &v in vertices {
            let a = local[v];
            for &w in self.neighbors(v) {
                let b = local[w as usize];
                if b != u32::MAX && a < b {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        let mut sub = Graph::from_sorted_pairs(vertices.len(), &pairs);
        if let Some(names) = &self.names {
            sub.names = Some(Arc::new(
                vertices.iter().map(|&v| names[v].clone()).collect(),
            ));
        }
        Ok(sub)
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid("not a permutation of the vertex set"));
        }
        Ok(Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))?.0)
    }
}

/// An ordered sample of graphs `G_1..G_N` with unique identifiers.
#[derive(Debug, Clone)]
pub struct NetworkSample {
    graphs: Vec<Graph>,
    ids: Vec<String>,
    labels: Option<Vec<String>>,
}

impl NetworkSample {
    pub fn new(graphs: Vec<Graph>, ids: Vec<String>, labels: Option<Vec<String>>) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::invalid("a network sample needs at least one graph"));
        }
        if ids.len() != graphs.len() || labels.as_ref().is_some_and(|l| l.len() != graphs.len()) {
            return Err(Error::invalid("graphs, ids and labels must have equal length"));
        }
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(NetworkSample { graphs, ids, labels })
    }

    /// Builds a sample with ids `g0, g1, ...`.
    pub fn from_graphs(graphs: Vec<Graph>) -> Result<Self> {
        let ids = (0..graphs.len()).map(|i| format!("g{i}")).collect();
        NetworkSample::new(graphs, ids, None)
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Vertex count of the smallest graph.
    pub fn n_min(&self) -> usize {
        self.graphs.iter().map(Graph::n).min().unwrap_or(0)
    }
}
