//! Transversals `(T, φ)` of a subgraph family.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Color, Edge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransversalKind {
    Cycle,
    Matching,
}

/// An edge set with a color per edge.
///
/// Pairs are kept sorted by edge, so two transversals compare equal exactly
/// when they have the same edge set and the same color map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transversal {
    kind: TransversalKind,
    pairs: Vec<(Edge, Color)>,
}

impl Transversal {
    pub fn new(kind: TransversalKind, mut pairs: Vec<(Edge, Color)>) -> Transversal {
        pairs.sort_unstable();
        Transversal { kind, pairs }
    }

    /// Canonical Hamiltonian cycle `0, 1, ..., n-1` with `edge(i, i+1)` colored `i`.
    pub fn canonical_cycle(n: usize) -> Transversal {
        Transversal::new(TransversalKind::Cycle, (0..n).map(|i| (Edge::new(i, (i + 1) % n), i)).collect())
    }

    /// Canonical perfect matching on `2n` vertices: `edge(i, n+i)` colored `i`.
    pub fn canonical_matching(n: usize) -> Transversal {
        Transversal::new(TransversalKind::Matching, (0..n).map(|i| (Edge::new(i, n + i), i)).collect())
    }

    /// Cycle through `order` (closing back to `order[0]`), with `colors[k]`
    /// on the edge `order[k] -> order[k+1]`.
    pub fn from_cycle_order(order: &[Vertex], colors: &[Color]) -> Transversal {
        assert_eq!(order.len(), colors.len());
        let n = order.len();
        Transversal::new(
            TransversalKind::Cycle,
            (0..n).map(|k| (Edge::new(order[k], order[(k + 1) % n]), colors[k])).collect(),
        )
    }

    pub fn kind(&self) -> TransversalKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(edge, color)` pairs sorted by edge.
    pub fn pairs(&self) -> &[(Edge, Color)] {
        &self.pairs
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pairs.iter().map(|&(e, _)| e)
    }

    pub fn color_of(&self, e: Edge) -> Option<Color> {
        self.pairs.binary_search_by(|(x, _)| x.cmp(&e)).ok().map(|k| self.pairs[k].1)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.color_of(e).is_some()
    }

    /// Edges incident to `v` with their colors.
    pub fn incident(&self, v: Vertex) -> Vec<(Edge, Color)> {
        self.pairs.iter().copied().filter(|(e, _)| e.contains(v)).collect()
    }

    /// Per-vertex neighbor lists over `n` vertices.
    pub fn adjacency(&self, n: usize) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); n];
        for &(e, _) in &self.pairs {
            let (a, b) = e.endpoints();
            if a < n && b < n {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Vertex order of a cycle transversal starting at `start` and leaving
    /// towards `next`. `None` if the edges do not form one spanning cycle
    /// on `n` vertices or `start -> next` is not an edge.
    pub fn cycle_order_from(&self, n: usize, start: Vertex, next: Vertex) -> Option<Vec<Vertex>> {
        let adj = self.adjacency(n);
        if adj.iter().any(|l| l.len() != 2) || !adj[start].contains(&next) {
            return None;
        }
        let mut order = Vec::with_capacity(n);
        order.push(start);
        let (mut prev, mut cur) = (start, next);
        while cur != start {
            if order.len() >= n {
                return None;
            }
            order.push(cur);
            let step = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = step;
        }
        (order.len() == n).then_some(order)
    }

    /// Applies a vertex relabeling (old -> new) and a color relabeling (old -> new).
    pub fn relabel(&self, vertex_perm: &[Vertex], color_perm: &[Color]) -> Transversal {
        Transversal::new(
            self.kind,
            self.pairs
                .iter()
                .map(|&(e, c)| {
                    let (a, b) = e.endpoints();
                    (Edge::new(vertex_perm[a], vertex_perm[b]), color_perm[c])
                })
                .collect(),
        )
    }

    /// Color map as an ordered map, mostly for diagnostics.
    pub fn color_map(&self) -> BTreeMap<Edge, Color> {
        self.pairs.iter().copied().collect()
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TransversalKind::Cycle => "cycle",
            TransversalKind::Matching => "matching",
        };
        write!(f, "{kind}[")?;
        for (k, (e, c)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}:{c}")?;
        }
        write!(f, "]")
    }
}
