use crate::digraph::{build_full_rb, CandidateSet, RbDigraph};
use crate::graph::{Arc, Edge, SubgraphFamily, Vertex};
use crate::transversal::{Transversal, TransversalKind};
use crate::validate::is_naturally_indexed;

use super::ExchangeError;

/// Even cycle alternating red matching edges and blue arcs out of `S`.
///
/// Step `k` leaves member `s_k` of `S` along the blue arc `s_k -> w_k`; `w_k`
/// is the partner of `s_{k+1}` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCycle {
    pub steps: Vec<Arc>,
}

impl AlternatingCycle {
    /// Number of edges (red plus blue).
    pub fn len(&self) -> usize {
        2 * self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn blue_arcs(&self) -> &[Arc] {
        &self.steps
    }

    pub fn red_edges(&self, h: &RbDigraph) -> Vec<Edge> {
        self.steps.iter().map(|a| Edge::new(a.tail, h.partner(a.tail))).collect()
    }

    /// Vertex sequence `partner(s_0), s_0, w_0 = partner(s_1), s_1, ...`.
    pub fn vertices(&self, h: &RbDigraph) -> Vec<Vertex> {
        self.steps.iter().flat_map(|a| [h.partner(a.tail), a.tail]).collect()
    }
}

/// Follows red and lowest-headed blue arcs from the lowest pair until a red edge repeats.
pub fn find_alternating_cycle(j: &RbDigraph, s: &CandidateSet) -> Result<AlternatingCycle, ExchangeError> {
    if !j.is_maximal_red_independent(s) {
        return Err(ExchangeError::NotMaximalRedIndependent);
    }
    let n = j.pairs();
    let mut visited_at: Vec<Option<usize>> = vec![None; n];
    let mut trail: Vec<Arc> = Vec::new();
    let mut v = if s.contains(0) { 0 } else { n };
    loop {
        visited_at[j.pair_of(v)] = Some(trail.len());
        let w = j.blue(v).iter().copied().find(|&w| !s.contains(w)).ok_or(ExchangeError::NoBlueEscape(v))?;
        trail.push(Arc::new(v, w));
        let next = j.partner(w);
        if let Some(start) = visited_at[j.pair_of(next)] {
            return Ok(AlternatingCycle { steps: trail.split_off(start) });
        }
        v = next;
    }
}

/// Second perfect matching transversal: the base matching flipped along an alternating cycle.
pub fn second_pm_transversal(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    j: &RbDigraph,
) -> Result<Transversal, ExchangeError> {
    second_pm_transversal_traced(family, base, s, j).map(|(t, _)| t)
}

/// As [`second_pm_transversal`], also returning the cycle used.
pub fn second_pm_transversal_traced(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    j: &RbDigraph,
) -> Result<(Transversal, AlternatingCycle), ExchangeError> {
    if !is_naturally_indexed(base, family.num_vertices()) {
        return Err(ExchangeError::NotNaturallyIndexed);
    }
    let full = build_full_rb(family, base)?;
    if !j.is_subdigraph_of(&full) {
        return Err(ExchangeError::NotAnAuxiliarySubdigraph);
    }
    let cycle = find_alternating_cycle(j, s)?;
    let n = j.pairs();
    // member of S in each pair -> replacement edge
    let mut replacement: Vec<Option<Vertex>> = vec![None; n];
    for a in cycle.blue_arcs() {
        replacement[j.pair_of(a.tail)] = Some(a.head);
    }
    let pairs = (0..n)
        .map(|i| {
            let inside = if s.contains(i) { i } else { i + n };
            let e = match replacement[i] {
                Some(w) => Edge::new(inside, w),
                None => Edge::new(i, i + n),
            };
            let c = base.color_of(Edge::new(i, i + n)).expect("canonical matching");
            (e, c)
        })
        .collect();
    Ok((Transversal::new(TransversalKind::Matching, pairs), cycle))
}
