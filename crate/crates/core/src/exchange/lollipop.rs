use crate::digraph::{build_full_ryb, pred, succ, CandidateSet, RedStructure, RybDigraph};
use crate::graph::{Color, Edge, SubgraphFamily, Vertex};
use crate::transversal::Transversal;
use crate::validate::is_naturally_indexed;

use super::ExchangeError;

const MAX_WALK_STEPS: usize = 10_000_000;

/// Vertex order of a Hamiltonian cycle; the closing edge is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexCycle(pub Vec<Vertex>);

impl VertexCycle {
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.0.len();
        (0..n).map(|k| Edge::new(self.0[k], self.0[(k + 1) % n])).collect()
    }
}

/// Role of an edge of a pruned digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcColor {
    /// Cycle edge `(i, i+1)`.
    Red(Vertex),
    /// Yellow arc out of the given tail.
    Yellow(Vertex),
    /// Blue arc out of the given tail.
    Blue(Vertex),
}

/// RYB-digraph `J'` keeping only cycle edges and, per member `i` of `S`,
/// one yellow arc out of `i-1` and one blue arc out of `i+1`, both into `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrunedDigraph {
    n: usize,
    set: CandidateSet,
    yellow_arc: Vec<Option<Vertex>>,
    blue_arc: Vec<Option<Vertex>>,
    adj: Vec<Vec<Vertex>>,
}

impl PrunedDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &CandidateSet {
        &self.set
    }

    /// Retained yellow arc head out of `v`, if any.
    pub fn yellow_arc(&self, v: Vertex) -> Option<Vertex> {
        self.yellow_arc[v]
    }

    pub fn blue_arc(&self, v: Vertex) -> Option<Vertex> {
        self.blue_arc[v]
    }

    /// Neighbors in the underlying undirected graph, sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn num_arcs(&self) -> usize {
        self.yellow_arc.iter().chain(&self.blue_arc).filter(|a| a.is_some()).count()
    }

    /// Edges of the underlying graph.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.n).flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| Edge::new(a, b))).collect()
    }

    /// Classifies the undirected edge `{a, b}`; `None` if it is not an edge of `J'`.
    pub fn classify(&self, a: Vertex, b: Vertex) -> Option<ArcColor> {
        let n = self.n;
        if b == succ(a, n) {
            Some(ArcColor::Red(a))
        } else if a == succ(b, n) {
            Some(ArcColor::Red(b))
        } else if self.yellow_arc[a] == Some(b) {
            Some(ArcColor::Yellow(a))
        } else if self.yellow_arc[b] == Some(a) {
            Some(ArcColor::Yellow(b))
        } else if self.blue_arc[a] == Some(b) {
            Some(ArcColor::Blue(a))
        } else if self.blue_arc[b] == Some(a) {
            Some(ArcColor::Blue(b))
        } else {
            None
        }
    }
}

/// Drops distance-2 red pairs and all but the lowest-headed qualifying arc per class.
pub fn prune(j: &RybDigraph, s: &CandidateSet) -> Result<PrunedDigraph, ExchangeError> {
    let n = j.n();
    if s.num_vertices() != n || !j.is_red_independent(s) {
        return Err(ExchangeError::NotRedIndependent);
    }
    if s.is_empty() {
        return Err(ExchangeError::NotLocallyDominating);
    }
    let mut yellow_arc = vec![None; n];
    let mut blue_arc = vec![None; n];
    for &i in s.members() {
        let (p, q) = (pred(i, n), succ(i, n));
        let y = j.yellow(p).iter().copied().find(|&v| s.contains(v));
        let b = j.blue(q).iter().copied().find(|&v| s.contains(v));
        match (y, b) {
            (Some(y), Some(b)) => {
                yellow_arc[p] = Some(y);
                blue_arc[q] = Some(b);
            }
            _ => return Err(ExchangeError::NotLocallyDominating),
        }
    }
    let mut adj: Vec<Vec<Vertex>> = (0..n).map(|v| vec![pred(v, n), succ(v, n)]).collect();
    for v in 0..n {
        for h in [yellow_arc[v], blue_arc[v]].into_iter().flatten() {
            adj[v].push(h);
            adj[h].push(v);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(PrunedDigraph { n, set: s.clone(), yellow_arc, blue_arc, adj })
}

/// Hamiltonian paths visited by the lollipop walk, with the pivot used at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LollipopTrace {
    pub states: Vec<Vec<Vertex>>,
    pub pivots: Vec<Vertex>,
}

impl LollipopTrace {
    pub fn last(&self) -> &[Vertex] {
        self.states.last().expect("trace has at least one state")
    }
}

/// Rotation pivots available at path `p`: vertices `p[j]`, `1 <= j <= len-3`,
/// adjacent to the endpoint. Returned with their positions.
fn pivots(jp: &PrunedDigraph, p: &[Vertex], pos: &[usize]) -> Vec<(Vertex, usize)> {
    let last = p[p.len() - 1];
    let before = p[p.len() - 2];
    jp.neighbors(last).iter().copied().filter(|&w| w != before && w != p[0]).map(|w| (w, pos[w])).collect()
}

/// Walks the lollipop graph from the base path `(s, s+1, ..., s-1)` to the
/// next Hamiltonian path whose endpoint closes a cycle.
pub fn lollipop_walk(jp: &PrunedDigraph, anchor: Edge) -> Result<LollipopTrace, ExchangeError> {
    let n = jp.n();
    let (a, b) = anchor.endpoints();
    let start = if jp.set().contains(a) && b == succ(a, n) {
        a
    } else if jp.set().contains(b) && a == succ(b, n) {
        b
    } else {
        return Err(ExchangeError::WalkStuck(format!("anchor {anchor} is not (s, s+1) for s in S")));
    };
    let mut path: Vec<Vertex> = (0..n).map(|k| (start + k) % n).collect();
    let mut pos = vec![0; n];
    for (k, &v) in path.iter().enumerate() {
        pos[v] = k;
    }
    let mut trace = LollipopTrace { states: vec![path.clone()], pivots: Vec::new() };
    let mut last_pivot: Option<Vertex> = None;
    for _ in 0..MAX_WALK_STEPS {
        let options: Vec<(Vertex, usize)> =
            pivots(jp, &path, &pos).into_iter().filter(|&(w, _)| Some(w) != last_pivot).collect();
        let endpoint = path[n - 1];
        let closes = jp.neighbors(endpoint).contains(&path[0]);
        let (w, j) = match options.as_slice() {
            [] if last_pivot.is_some() && closes => return Ok(trace),
            [] => return Err(ExchangeError::WalkStuck(format!("no rotation from endpoint {endpoint}"))),
            [only] => *only,
            _ => {
                return Err(ExchangeError::WalkStuck(format!(
                    "ambiguous rotation at endpoint {endpoint} (degree {})",
                    jp.degree(endpoint)
                )))
            }
        };
        path[j + 1..].reverse();
        for (k, &v) in path.iter().enumerate().skip(j + 1) {
            pos[v] = k;
        }
        trace.states.push(path.clone());
        trace.pivots.push(w);
        last_pivot = Some(w);
    }
    Err(ExchangeError::WalkStuck("step limit reached".into()))
}

/// Second Hamiltonian cycle of the underlying graph of `J'`.
pub fn lollipop_second_cycle(jp: &PrunedDigraph, anchor: Edge) -> Result<VertexCycle, ExchangeError> {
    let trace = lollipop_walk(jp, anchor)?;
    Ok(VertexCycle(trace.last().to_vec()))
}

/// True if `path` alternates members of `S` with whole base paths of `V \ S`
/// (each traversed in one direction), starting with a member of `S`.
pub fn has_interleaved_form(path: &[Vertex], s: &CandidateSet) -> bool {
    let n = path.len();
    if n == 0 || !s.contains(path[0]) {
        return false;
    }
    let mut k = 0;
    let mut runs = 0;
    while k < n {
        if !s.contains(path[k]) {
            return false;
        }
        k += 1;
        let begin = k;
        while k < n && !s.contains(path[k]) {
            k += 1;
        }
        let run = &path[begin..k];
        if run.is_empty() {
            return false;
        }
        let forward = run.len() == 1 || run[1] == succ(run[0], n);
        let step = |v: Vertex| if forward { succ(v, n) } else { pred(v, n) };
        let back = |v: Vertex| if forward { pred(v, n) } else { succ(v, n) };
        if run.windows(2).any(|w| w[1] != step(w[0])) {
            return false;
        }
        // maximal: both cycle-neighbors outside the run are in S
        if !s.contains(back(run[0])) || !s.contains(step(run[run.len() - 1])) {
            return false;
        }
        runs += 1;
    }
    runs == s.len()
}

/// Colors the cycle found by the lollipop walk.
///
/// Red `(i, i+1)` keeps its base color, a yellow arc out of `i` takes the
/// color of base edge `(i, i+1)`, a blue arc out of `i` that of `(i-1, i)`;
/// the closing edge receives the one remaining color.
pub fn recolor_ham(cstar: &VertexCycle, jp: &PrunedDigraph, base: &Transversal) -> Result<Transversal, ExchangeError> {
    let n = jp.n();
    let order = &cstar.0;
    if order.len() != n {
        return Err(ExchangeError::RecolorConflict(format!("cycle has {} vertices, expected {n}", order.len())));
    }
    let base_color = |i: Vertex| -> Result<Color, ExchangeError> {
        base.color_of(Edge::new(i, succ(i, n)))
            .ok_or_else(|| ExchangeError::RecolorConflict(format!("base has no edge ({i}, {})", succ(i, n))))
    };
    let mut used = vec![false; n];
    let mut colors = Vec::with_capacity(n);
    for k in 0..n - 1 {
        let (a, b) = (order[k], order[k + 1]);
        let c = match jp.classify(a, b) {
            Some(ArcColor::Red(i)) | Some(ArcColor::Yellow(i)) => base_color(i)?,
            Some(ArcColor::Blue(i)) => base_color(pred(i, n))?,
            None => return Err(ExchangeError::RecolorConflict(format!("edge {a}-{b} is not in J'"))),
        };
        if used[c] {
            return Err(ExchangeError::RecolorConflict(format!("color {c} assigned twice")));
        }
        used[c] = true;
        colors.push(c);
    }
    let missing: Vec<Color> = (0..n).filter(|&c| !used[c]).collect();
    if missing.len() != 1 {
        return Err(ExchangeError::RecolorConflict(format!("{} colors missing", missing.len())));
    }
    let (last, first) = (order[n - 1], order[0]);
    if jp.classify(last, first).is_none() {
        return Err(ExchangeError::RecolorConflict(format!("closing edge {last}-{first} is not in J'")));
    }
    colors.push(missing[0]);
    Ok(Transversal::from_cycle_order(order, &colors))
}

/// Lemma-style second Hamiltonian transversal in `Ω(C, φ, S)` using only edges of `J`.
pub fn second_ham_transversal(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    j: &RybDigraph,
) -> Result<Transversal, ExchangeError> {
    second_ham_transversal_traced(family, base, s, j).map(|(t, _)| t)
}

/// As [`second_ham_transversal`], also returning the walk trace.
pub fn second_ham_transversal_traced(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    j: &RybDigraph,
) -> Result<(Transversal, LollipopTrace), ExchangeError> {
    let n = family.num_vertices();
    if !is_naturally_indexed(base, n) {
        return Err(ExchangeError::NotNaturallyIndexed);
    }
    let full = build_full_ryb(family, base)?;
    if !j.is_subdigraph_of(&full) {
        return Err(ExchangeError::NotAnAuxiliarySubdigraph);
    }
    let jp = prune(j, s)?;
    let anchor_vertex = s.members()[0];
    let trace = lollipop_walk(&jp, Edge::new(anchor_vertex, succ(anchor_vertex, n)))?;
    let cycle = VertexCycle(trace.last().to_vec());
    let t = recolor_ham(&cycle, &jp, base)?;
    if let Some(&(e, c)) = t.pairs().iter().find(|&&(e, c)| !family.subgraph(c).contains_edge(e)) {
        return Err(ExchangeError::RecolorConflict(format!("edge {e} not in subgraph {c}")));
    }
    Ok((t, trace))
}
