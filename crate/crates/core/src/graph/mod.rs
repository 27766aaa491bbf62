//! Simple undirected graphs over dense vertex ids, cuts, and twin contraction.

mod cut;
mod format;
mod twins;

pub use cut::{apply_transfer, cut_size, marginal_contribution, transfer_delta, Cut};
pub use format::{parse_graph, write_graph};
pub use twins::{is_tight, twin_classes, Bubble, ContractedGraph};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("bubbles {0} and {1} are not adjacent")]
    BubblesNotAdjacent(usize, usize),
    #[error("transfer of {ell} vertices infeasible (at most {max})")]
    InfeasibleTransfer { ell: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so `has_edge` is a binary search and
/// iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `u-v`, rejecting loops, duplicates and out-of-range ids.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::ParallelEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Like `add_edge`, but an existing edge is a no-op. Returns whether the edge was new.
    pub fn ensure_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        match self.add_edge(u, v) {
            Ok(()) => Ok(true),
            Err(GraphError::ParallelEdge(..)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Closed neighborhood `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        let ns = &self.adj[v];
        let pos = ns.binary_search(&v).unwrap_err();
        out.extend_from_slice(&ns[..pos]);
        out.push(v);
        out.extend_from_slice(&ns[pos..]);
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Induced subgraph on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut ns: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                ns.sort_unstable();
                ns
            })
            .collect::<Vec<_>>();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Number of edges with both ends in `vertices` (which must be duplicate-free).
    pub fn induced_edge_count(&self, vertices: &[Vertex]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        vertices
            .iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| inside[w]).count())
            .sum::<usize>()
            / 2
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }
}
