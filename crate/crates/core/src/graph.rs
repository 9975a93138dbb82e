//! Simple undirected graphs and multiplicity vectors.

use crate::error::{Error, Result};

/// A simple undirected graph with at least one edge.
///
/// Edges are stored as `(min, max)` pairs sorted lexicographically; the position of an
/// edge in [`Graph::edges`] is its canonical index, which [`crate::EdgeWeights`] uses to
/// address per-edge weight blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        if edge_list.is_empty() {
            return Err(Error::invalid("edges: graph must have at least one edge"));
        }
        Self::build(vertex_count, edge_list)
    }

    /// Like [`Graph::new`] but accepts an empty edge list. Used for host graphs in the
    /// clique reduction, which are only read through their adjacency.
    pub(crate) fn new_allow_empty(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        Self::build(vertex_count, edge_list)
    }

    fn build(vertex_count: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::invalid("vertices: vertex count must be at least 1"));
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (pos, &(u, v)) in edge_list.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!(
                    "edges[{pos}]: endpoint out of range in [{u}, {v}] (vertex count {vertex_count})"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("edges[{pos}]: loop at vertex {u}")));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("edges: duplicate edge [{}, {}]", w[0].0, w[0].1)));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { vertex_count, edges, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Δ(G). At least 1 for graphs built with [`Graph::new`].
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Canonical index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    /// Complete graph on `n` vertices followed by `isolated` isolated vertices.
    pub fn complete_with_isolated(n: usize, isolated: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n + isolated, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::complete_with_isolated(n, 0)
    }

    /// `n` pairwise vertex-disjoint edges `{2i, 2i+1}`.
    pub fn perfect_matching(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::new(2 * n, &edges)
    }
}

/// Prescribed color-class sizes `(μ_1, ..., μ_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityVector {
    counts: Vec<usize>,
}

impl MultiplicityVector {
    /// Validates `counts` against `g`. Zero entries are accepted; check
    /// [`MultiplicityVector::has_zero`] before claiming zero-freeness.
    pub fn validate(g: &Graph, counts: &[i64]) -> Result<Self> {
        Self::for_vertex_count(g.vertex_count(), counts)
    }

    pub fn for_vertex_count(vertex_count: usize, counts: &[i64]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::invalid("mult: multiplicity vector must be non-empty"));
        }
        let mut out = Vec::with_capacity(counts.len());
        for (i, &c) in counts.iter().enumerate() {
            if c < 0 {
                return Err(Error::invalid(format!("mult[{i}]: negative multiplicity {c}")));
            }
            out.push(c as usize);
        }
        let sum: usize = out.iter().sum();
        if sum != vertex_count {
            return Err(Error::invalid(format!(
                "mult: multiplicities sum to {sum} but the graph has {vertex_count} vertices"
            )));
        }
        Ok(MultiplicityVector { counts: out })
    }

    /// `(1, ..., 1)` of length `n`.
    pub fn ones(n: usize) -> Self {
        MultiplicityVector { counts: vec![1; n] }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn has_zero(&self) -> bool {
        self.counts.contains(&0)
    }
}
