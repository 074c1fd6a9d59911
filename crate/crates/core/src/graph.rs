//! Vertices, edges, arcs, base graphs and subgraph families.

use std::fmt;
use std::sync::Arc as Shared;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex index in `[0, N)`.
pub type Vertex = usize;

/// Color index in `[0, s)`; color `i` names the subgraph `G_i`.
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
}

/// Undirected edge with normalized endpoints `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Returns `None` for a loop.
    pub fn try_new(a: Vertex, b: Vertex) -> Option<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Panics on a loop.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        Edge::try_new(a, b).unwrap_or_else(|| panic!("loop edge at vertex {a}"))
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Directed arc `tail -> head` of an auxiliary digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub fn new(tail: Vertex, head: Vertex) -> Arc {
        assert_ne!(tail, head, "arc tail equals head");
        Arc { tail, head }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }
}

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
    num_edges: usize,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph { adj: vec![Vec::new(); n], num_edges: 0 }
    }

    /// Builds a simple graph; rejects loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<SimpleGraph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut num_edges = 0;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
            num_edges += 1;
        }
        for (x, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(Edge::new(x, w[0])));
            }
        }
        Ok(SimpleGraph { adj, num_edges })
    }

    /// Like [`SimpleGraph::from_edges`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<SimpleGraph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list: Vec<Edge> = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            list.push(Edge::try_new(a, b).ok_or(GraphError::Loop(a))?);
        }
        list.sort_unstable();
        list.dedup();
        SimpleGraph::from_edges(n, list.into_iter().map(Edge::endpoints))
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        let (a, b) = e.endpoints();
        self.has_edge(a, b)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| Edge::new(a, b)))
    }
}

/// Which transversal structure a family is meant to carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `N` subgraphs; transversals are Hamiltonian cycles.
    Hamiltonian,
    /// `N/2` subgraphs; transversals are perfect matchings.
    Matching,
}

impl FamilyKind {
    pub fn expected_subgraphs(self, n: usize) -> usize {
        match self {
            FamilyKind::Hamiltonian => n,
            FamilyKind::Matching => n / 2,
        }
    }
}

/// Base graph `G` plus an ordered list of subgraphs `G_0..G_{s-1}`.
///
/// Subgraphs are reference counted so that families with many identical
/// members (every `G_i = G`) do not duplicate storage.
#[derive(Debug, Clone)]
pub struct SubgraphFamily {
    base: SimpleGraph,
    subgraphs: Vec<Shared<SimpleGraph>>,
    kind: FamilyKind,
}

impl PartialEq for SubgraphFamily {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.base == other.base
            && self.subgraphs.len() == other.subgraphs.len()
            && self.subgraphs.iter().zip(&other.subgraphs).all(|(a, b)| Shared::ptr_eq(a, b) || a == b)
    }
}

impl Eq for SubgraphFamily {}

impl SubgraphFamily {
    /// Assembles a family without checking it; see [`crate::validate::validate_family`].
    pub fn new(base: SimpleGraph, subgraphs: Vec<Shared<SimpleGraph>>, kind: FamilyKind) -> SubgraphFamily {
        SubgraphFamily { base, subgraphs, kind }
    }

    /// Builds a family from raw edge lists; the base graph is the union of all subgraphs.
    pub fn from_edge_lists(
        n: usize,
        lists: &[Vec<(Vertex, Vertex)>],
        kind: FamilyKind,
    ) -> Result<SubgraphFamily, GraphError> {
        let mut subgraphs: Vec<Shared<SimpleGraph>> = Vec::with_capacity(lists.len());
        // identical lists share one graph
        let mut seen: Vec<(usize, Shared<SimpleGraph>)> = Vec::new();
        for (k, list) in lists.iter().enumerate() {
            if let Some((_, g)) = seen.iter().find(|(j, _)| lists[*j] == *list) {
                subgraphs.push(g.clone());
                continue;
            }
            let g = Shared::new(SimpleGraph::from_edges_dedup(n, list.iter().copied())?);
            if seen.len() < 4 {
                seen.push((k, g.clone()));
            }
            subgraphs.push(g);
        }
        let base = SimpleGraph::from_edges_dedup(n, lists.iter().flatten().copied())?;
        Ok(SubgraphFamily { base, subgraphs, kind })
    }

    /// Every subgraph equal to `base` (the Thomassen setting).
    pub fn all_equal(base: SimpleGraph, kind: FamilyKind) -> SubgraphFamily {
        let count = kind.expected_subgraphs(base.num_vertices());
        let shared = Shared::new(base.clone());
        SubgraphFamily { base, subgraphs: vec![shared; count], kind }
    }

    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn num_vertices(&self) -> usize {
        self.base.num_vertices()
    }

    pub fn num_subgraphs(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn subgraph(&self, color: Color) -> &SimpleGraph {
        &self.subgraphs[color]
    }

    pub fn subgraphs(&self) -> impl Iterator<Item = &SimpleGraph> {
        self.subgraphs.iter().map(|g| &**g)
    }

    /// `e ∈ G_color`.
    pub fn in_subgraph(&self, color: Color, a: Vertex, b: Vertex) -> bool {
        color < self.subgraphs.len() && self.subgraphs[color].has_edge(a, b)
    }

    /// Colors `c` with `e ∈ G_c`, ascending.
    pub fn colors_of(&self, e: Edge) -> Vec<Color> {
        (0..self.subgraphs.len()).filter(|&c| self.subgraphs[c].contains_edge(e)).collect()
    }

    pub fn min_subgraph_degree(&self) -> usize {
        self.subgraphs.iter().map(|g| g.min_degree()).min().unwrap_or(0)
    }

    /// Relabels vertices by `vertex_perm` (old -> new) and reorders subgraphs so
    /// that new color `k` is old color `color_order[k]`.
    pub fn relabel(&self, vertex_perm: &[Vertex], color_order: &[Color]) -> SubgraphFamily {
        let n = self.num_vertices();
        let map = |g: &SimpleGraph| {
            SimpleGraph::from_edges(
                n,
                g.edges().map(|e| {
                    let (a, b) = e.endpoints();
                    (vertex_perm[a], vertex_perm[b])
                }),
            )
            .expect("relabeling preserves simplicity")
        };
        let base = map(&self.base);
        // identical subgraphs stay shared after relabeling
        let mut cache: Vec<(*const SimpleGraph, Shared<SimpleGraph>)> = Vec::new();
        let subgraphs = color_order
            .iter()
            .map(|&old| {
                let src = &self.subgraphs[old];
                if let Some((_, g)) = cache.iter().find(|(p, _)| *p == Shared::as_ptr(src)) {
                    return g.clone();
                }
                let g = Shared::new(map(src));
                cache.push((Shared::as_ptr(src), g.clone()));
                g
            })
            .collect();
        SubgraphFamily { base, subgraphs, kind: self.kind }
    }

    /// Raw edge lists per subgraph, for serialization.
    pub fn edge_lists(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        self.subgraphs.iter().map(|g| g.edges().map(Edge::endpoints).collect()).collect()
    }
}
