//! Red/yellow/blue auxiliary digraphs for naturally indexed transversals.
//!
//! For a Hamiltonian transversal the red edges are the cycle pairs at
//! distance 1 and 2; a yellow arc `i -> j` records a chord of `G_i` at `i`,
//! a blue arc `i -> j` a chord of `G_{i-1}` at `i`. For a perfect matching
//! on `2n` vertices (`x_i = i`, `y_i = n + i`) the red edges are the matching
//! pairs and a blue arc `x_i -> y_j` (or `y_i -> x_j`) records a cross edge
//! of `G_i` with `j != i`.
//!
//! Full digraphs and their sub-digraphs share one representation; a
//! sub-digraph simply carries fewer arcs.

use thiserror::Error;

use crate::graph::{Edge, FamilyKind, SubgraphFamily, Vertex};
use crate::transversal::{Transversal, TransversalKind};
use crate::validate::is_naturally_indexed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("transversal is not naturally indexed")]
    NotNaturallyIndexed,
    #[error("family kind does not match the digraph kind")]
    WrongKind,
    #[error("set is not red-independent")]
    NotRedIndependent,
    #[error("set is not a maximal red-independent set")]
    NotMaximalRedIndependent,
    #[error("set is empty")]
    EmptySet,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

/// `(i - 1) mod n`.
#[inline]
pub fn pred(i: Vertex, n: usize) -> Vertex {
    (i + n - 1) % n
}

/// `(i + 1) mod n`.
#[inline]
pub fn succ(i: Vertex, n: usize) -> Vertex {
    (i + 1) % n
}

/// Circular distance between `a` and `b` on an `n`-cycle.
#[inline]
pub fn circular_distance(a: Vertex, b: Vertex, n: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// Sorted vertex subset of `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateSet {
    members: Vec<Vertex>,
    mask: Vec<bool>,
    metrics: Option<SetMetrics>,
}

/// Cached counts for a set against a full digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetMetrics {
    /// Per member `i` (in order): `|yellow(i-1) ∩ S|` and `|blue(i+1) ∩ S|`.
    Ryb { red_independent: bool, yellow_counts: Vec<usize>, blue_counts: Vec<usize>, d_star: usize },
    /// Per member `v` (in order): `|blue(v) \ S|`.
    Rb { red_independent: bool, escape_counts: Vec<usize>, d_cross: usize },
}

impl CandidateSet {
    pub fn new(num_vertices: usize, members: impl IntoIterator<Item = Vertex>) -> Result<CandidateSet, DigraphError> {
        let mut mask = vec![false; num_vertices];
        let mut list = Vec::new();
        for v in members {
            if v >= num_vertices {
                return Err(DigraphError::VertexOutOfRange(v));
            }
            if !mask[v] {
                mask[v] = true;
                list.push(v);
            }
        }
        list.sort_unstable();
        Ok(CandidateSet { members: list, mask, metrics: None })
    }

    pub fn from_mask(mask: Vec<bool>) -> CandidateSet {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
        CandidateSet { members, mask, metrics: None }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn without(&self, v: Vertex) -> CandidateSet {
        let mut mask = self.mask.clone();
        mask[v] = false;
        CandidateSet::from_mask(mask)
    }

    pub fn metrics(&self) -> Option<&SetMetrics> {
        self.metrics.as_ref()
    }

    /// Copy carrying metrics computed against the full RYB-digraph `h`.
    pub fn with_ryb_metrics(&self, h: &RybDigraph) -> CandidateSet {
        let red_independent = h.is_red_independent(self);
        let (yellow_counts, blue_counts) = h.member_counts(self);
        let d_star = yellow_counts.iter().chain(&blue_counts).copied().min().unwrap_or(0);
        CandidateSet {
            metrics: Some(SetMetrics::Ryb { red_independent, yellow_counts, blue_counts, d_star }),
            ..self.clone()
        }
    }

    /// Copy carrying metrics computed against the full RB-digraph `h`.
    pub fn with_rb_metrics(&self, h: &RbDigraph) -> CandidateSet {
        let red_independent = h.is_red_independent(self);
        let escape_counts = h.escape_counts(self);
        let d_cross = escape_counts.iter().copied().min().unwrap_or(0);
        CandidateSet { metrics: Some(SetMetrics::Rb { red_independent, escape_counts, d_cross }), ..self.clone() }
    }
}

/// Auxiliary digraph with a fixed red edge set.
pub trait RedStructure {
    fn num_vertices(&self) -> usize;

    /// True if no two members of `s` share a red edge.
    fn is_red_independent(&self, s: &CandidateSet) -> bool;
}

/// RYB-digraph of a naturally indexed Hamiltonian transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RybDigraph {
    n: usize,
    yellow: Vec<Vec<Vertex>>,
    blue: Vec<Vec<Vertex>>,
}

impl RybDigraph {
    /// Digraph with only red edges.
    pub fn red_only(n: usize) -> RybDigraph {
        RybDigraph { n, yellow: vec![Vec::new(); n], blue: vec![Vec::new(); n] }
    }

    /// Builds from explicit arc lists; arcs whose head is a cycle neighbor of the tail are rejected.
    pub fn from_arcs(
        n: usize,
        yellow: impl IntoIterator<Item = (Vertex, Vertex)>,
        blue: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> RybDigraph {
        let mut g = RybDigraph::red_only(n);
        for (t, h) in yellow {
            assert!(t != h && h != pred(t, n) && h != succ(t, n), "yellow arc {t}->{h} parallels a cycle edge");
            g.yellow[t].push(h);
        }
        for (t, h) in blue {
            assert!(t != h && h != pred(t, n) && h != succ(t, n), "blue arc {t}->{h} parallels a cycle edge");
            g.blue[t].push(h);
        }
        for list in g.yellow.iter_mut().chain(g.blue.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn yellow(&self, v: Vertex) -> &[Vertex] {
        &self.yellow[v]
    }

    pub fn blue(&self, v: Vertex) -> &[Vertex] {
        &self.blue[v]
    }

    /// Red pairs `{i, i+1}` and `{i, i+2}`, deduplicated.
    pub fn red_edges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut out: Vec<Edge> =
            (0..n).flat_map(|i| [Edge::try_new(i, succ(i, n)), Edge::try_new(i, (i + 2) % n)]).flatten().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn num_arcs(&self) -> usize {
        self.yellow.iter().chain(&self.blue).map(Vec::len).sum()
    }

    /// True if every arc of `self` is an arc of `other` (same `n`).
    pub fn is_subdigraph_of(&self, other: &RybDigraph) -> bool {
        let subset = |a: &[Vertex], b: &[Vertex]| a.iter().all(|x| b.binary_search(x).is_ok());
        self.n == other.n
            && (0..self.n).all(|v| subset(&self.yellow[v], &other.yellow[v]) && subset(&self.blue[v], &other.blue[v]))
    }

    pub fn min_yellow_out_degree(&self) -> usize {
        self.yellow.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn min_blue_out_degree(&self) -> usize {
        self.blue.iter().map(Vec::len).min().unwrap_or(0)
    }

    fn count_in(list: &[Vertex], s: &CandidateSet) -> usize {
        list.iter().filter(|&&v| s.contains(v)).count()
    }

    /// Per member `i`: `(|yellow(i-1) ∩ S|, |blue(i+1) ∩ S|)`, in member order.
    pub fn member_counts(&self, s: &CandidateSet) -> (Vec<usize>, Vec<usize>) {
        let n = self.n;
        s.members()
            .iter()
            .map(|&i| (Self::count_in(&self.yellow[pred(i, n)], s), Self::count_in(&self.blue[succ(i, n)], s)))
            .unzip()
    }

    fn check_set(&self, s: &CandidateSet) -> Result<(), DigraphError> {
        if s.num_vertices() != self.n {
            return Err(DigraphError::VertexOutOfRange(s.num_vertices()));
        }
        if !self.is_red_independent(s) {
            return Err(DigraphError::NotRedIndependent);
        }
        Ok(())
    }

    /// Every member `i` has a yellow arc from `i-1` and a blue arc from `i+1` into `S`.
    pub fn is_locally_dominating(&self, s: &CandidateSet) -> Result<bool, DigraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Ok(false);
        }
        let n = self.n;
        Ok(s.members().iter().all(|&i| {
            self.yellow[pred(i, n)].iter().any(|&v| s.contains(v))
                && self.blue[succ(i, n)].iter().any(|&v| s.contains(v))
        }))
    }

    /// `min_{i ∈ S} min(|yellow(i-1) ∩ S|, |blue(i+1) ∩ S|)`; zero when some count is empty.
    pub fn d_star(&self, s: &CandidateSet) -> Result<usize, DigraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(DigraphError::EmptySet);
        }
        let (ys, bs) = self.member_counts(s);
        Ok(ys.into_iter().chain(bs).min().unwrap_or(0))
    }
}

impl RedStructure for RybDigraph {
    fn num_vertices(&self) -> usize {
        self.n
    }

    /// Members pairwise at circular distance at least 3.
    fn is_red_independent(&self, s: &CandidateSet) -> bool {
        let m = s.members();
        let n = self.n;
        if m.len() < 2 {
            return true;
        }
        // sorted members: checking neighbors in circular order suffices
        let gaps_ok = m.windows(2).all(|w| circular_distance(w[0], w[1], n) >= 3);
        gaps_ok && circular_distance(m[m.len() - 1], m[0], n) >= 3
    }
}

/// Builds the full RYB-digraph of a naturally indexed Hamiltonian transversal.
pub fn build_full_ryb(family: &SubgraphFamily, t: &Transversal) -> Result<RybDigraph, DigraphError> {
    let n = family.num_vertices();
    if family.kind() != FamilyKind::Hamiltonian || t.kind() != TransversalKind::Cycle {
        return Err(DigraphError::WrongKind);
    }
    if !is_naturally_indexed(t, n) || family.num_subgraphs() != n {
        return Err(DigraphError::NotNaturallyIndexed);
    }
    let mut h = RybDigraph::red_only(n);
    for i in 0..n {
        let (p, s) = (pred(i, n), succ(i, n));
        h.yellow[i] = family.subgraph(i).neighbors(i).iter().copied().filter(|&j| j != p && j != s).collect();
        h.blue[i] = family.subgraph(p).neighbors(i).iter().copied().filter(|&j| j != p && j != s).collect();
    }
    Ok(h)
}

/// RB-digraph of a naturally indexed perfect matching on `2n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbDigraph {
    n: usize,
    blue: Vec<Vec<Vertex>>,
}

impl RbDigraph {
    /// Red edges only; `n` is the number of matched pairs.
    pub fn red_only(n: usize) -> RbDigraph {
        RbDigraph { n, blue: vec![Vec::new(); 2 * n] }
    }

    /// Builds from explicit blue arcs; arcs must join `x` to `y` side of different pairs.
    pub fn from_arcs(n: usize, blue: impl IntoIterator<Item = (Vertex, Vertex)>) -> RbDigraph {
        let mut g = RbDigraph::red_only(n);
        for (t, h) in blue {
            assert!((t < n) != (h < n) && t % n != h % n, "blue arc {t}->{h} violates the cross-pair rule");
            g.blue[t].push(h);
        }
        for list in &mut g.blue {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    pub fn pairs(&self) -> usize {
        self.n
    }

    pub fn blue(&self, v: Vertex) -> &[Vertex] {
        &self.blue[v]
    }

    /// Matched partner of `v` in the canonical matching.
    #[inline]
    pub fn partner(&self, v: Vertex) -> Vertex {
        if v < self.n {
            v + self.n
        } else {
            v - self.n
        }
    }

    #[inline]
    pub fn pair_of(&self, v: Vertex) -> usize {
        v % self.n
    }

    pub fn red_edges(&self) -> Vec<Edge> {
        (0..self.n).map(|i| Edge::new(i, i + self.n)).collect()
    }

    pub fn num_arcs(&self) -> usize {
        self.blue.iter().map(Vec::len).sum()
    }

    pub fn is_subdigraph_of(&self, other: &RbDigraph) -> bool {
        self.n == other.n
            && self.blue.iter().zip(&other.blue).all(|(a, b)| a.iter().all(|x| b.binary_search(x).is_ok()))
    }

    pub fn min_blue_out_degree(&self) -> usize {
        self.blue.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Exactly one endpoint of every red pair in `s`.
    pub fn is_maximal_red_independent(&self, s: &CandidateSet) -> bool {
        s.num_vertices() == 2 * self.n && (0..self.n).all(|i| s.contains(i) != s.contains(i + self.n))
    }

    /// Per member `v`: `|blue(v) \ S|`, in member order.
    pub fn escape_counts(&self, s: &CandidateSet) -> Vec<usize> {
        s.members().iter().map(|&v| self.blue[v].iter().filter(|&&w| !s.contains(w)).count()).collect()
    }

    /// `min_{v ∈ S} |blue(v) \ S|` over a maximal red-independent set.
    pub fn d_cross(&self, s: &CandidateSet) -> Result<usize, DigraphError> {
        if !self.is_maximal_red_independent(s) {
            return Err(DigraphError::NotMaximalRedIndependent);
        }
        Ok(self.escape_counts(s).into_iter().min().unwrap_or(0))
    }
}

impl RedStructure for RbDigraph {
    fn num_vertices(&self) -> usize {
        2 * self.n
    }

    fn is_red_independent(&self, s: &CandidateSet) -> bool {
        s.num_vertices() == 2 * self.n && (0..self.n).all(|i| !(s.contains(i) && s.contains(i + self.n)))
    }
}

/// Builds the full RB-digraph of a naturally indexed perfect matching transversal.
pub fn build_full_rb(family: &SubgraphFamily, t: &Transversal) -> Result<RbDigraph, DigraphError> {
    let total = family.num_vertices();
    if family.kind() != FamilyKind::Matching || t.kind() != TransversalKind::Matching {
        return Err(DigraphError::WrongKind);
    }
    if !is_naturally_indexed(t, total) || family.num_subgraphs() * 2 != total {
        return Err(DigraphError::NotNaturallyIndexed);
    }
    let n = total / 2;
    let mut h = RbDigraph::red_only(n);
    for i in 0..n {
        let g = family.subgraph(i);
        let (x, y) = (i, n + i);
        h.blue[x] = g.neighbors(x).iter().copied().filter(|&w| w >= n && w != y).collect();
        h.blue[y] = g.neighbors(y).iter().copied().filter(|&w| w < n && w != x).collect();
    }
    Ok(h)
}

/// Does `cand` belong to `Ω(C, φ, S)` for the naturally indexed cycle `base`?
///
/// `cand` must contain every base edge avoiding `S`, agree with `base` on
/// shared colors, and at every cycle neighbor `v` of `S` use exactly one edge
/// into `S`, carrying the color of `v`'s base edge into `S`.
pub fn omega_member_ham(base: &Transversal, s: &CandidateSet, cand: &Transversal) -> bool {
    let n = s.num_vertices();
    if cand.kind() != TransversalKind::Cycle || cand.len() != n || base.len() != n {
        return false;
    }
    let Some(&(first, _)) = cand.pairs().first() else { return false };
    let (a, b) = first.endpoints();
    if cand.cycle_order_from(n, a, b).is_none() {
        return false;
    }
    for &(e, c) in base.pairs() {
        let (u, v) = e.endpoints();
        match cand.color_of(e) {
            Some(c2) if c2 != c => return false,
            None if !s.contains(u) && !s.contains(v) => return false,
            _ => {}
        }
    }
    let cand_adj = cand.adjacency(n);
    for &(e, c) in base.pairs() {
        let (u, v) = e.endpoints();
        let boundary = match (s.contains(u), s.contains(v)) {
            (true, false) => v,
            (false, true) => u,
            _ => continue,
        };
        let into_s: Vec<Vertex> = cand_adj[boundary].iter().copied().filter(|&w| s.contains(w)).collect();
        if into_s.len() != 1 || cand.color_of(Edge::new(boundary, into_s[0])) != Some(c) {
            return false;
        }
    }
    true
}

/// Does `cand` belong to `Ω(M, φ, S)` for the naturally indexed matching `base`?
pub fn omega_member_pm(base: &Transversal, s: &CandidateSet, cand: &Transversal) -> bool {
    let total = s.num_vertices();
    if cand.kind() != TransversalKind::Matching || cand.len() * 2 != total || base.len() != cand.len() {
        return false;
    }
    let mut covered = vec![false; total];
    for e in cand.edges() {
        let (u, v) = e.endpoints();
        if covered[u] || covered[v] || s.contains(u) == s.contains(v) {
            return false;
        }
        covered[u] = true;
        covered[v] = true;
    }
    for &(e, c) in base.pairs() {
        let (u, v) = e.endpoints();
        let inside = if s.contains(u) { u } else { v };
        let used = cand.incident(inside);
        if used.len() != 1 || used[0].1 != c {
            return false;
        }
    }
    true
}
