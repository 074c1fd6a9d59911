//! Brute-force ground truth for transversal counts.
//!
//! Nothing here touches the auxiliary digraphs or the exchange machinery:
//! Hamiltonian transversals are found by a depth-first search over cycles
//! through vertex 0, pruned by an incremental bipartite matching between the
//! chosen edges and the colors; perfect matching transversals by matching
//! the lowest uncovered vertex with every admissible `(partner, color)` pair.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exec::Exec;
use crate::graph::{Edge, FamilyKind, SimpleGraph, SubgraphFamily, Vertex};
use crate::transversal::{Transversal, TransversalKind};
use crate::validate::validate_family;

/// Limits for one oracle call. Exceeding any of them is reported, never truncated silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_results: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 100_000_000, max_results: None, time_limit: None }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> SearchBudget {
        SearchBudget { max_nodes, ..SearchBudget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exceeded after {nodes} nodes ({} partial results)", partial.len())]
    BudgetExceeded { partial: Vec<Transversal>, nodes: u64 },
    #[error("invalid family: {0:?}")]
    InvalidFamily(Vec<String>),
    #[error("family kind does not match the requested search")]
    WrongKind,
    #[error("instance too large for the oracle ({0} colors, at most 64 supported)")]
    TooLarge(usize),
}

/// Shared node / time accounting across parallel branches.
struct Meter {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: SearchBudget,
    started: Instant,
}

impl Meter {
    fn new(budget: SearchBudget) -> Meter {
        Meter { nodes: AtomicU64::new(0), stop: AtomicBool::new(false), budget, started: Instant::now() }
    }

    /// Counts one node; false once the budget is gone.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_time =
            k.is_multiple_of(4096) && self.budget.time_limit.is_some_and(|lim| self.started.elapsed() > lim);
        if k > self.budget.max_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn exhausted(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn count(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Dense `n x n` table of color bitmasks: bit `c` set iff the edge is in `G_c`.
struct ColorTable {
    n: usize,
    masks: Vec<u64>,
}

impl ColorTable {
    fn new(family: &SubgraphFamily) -> Result<ColorTable, OracleError> {
        let n = family.num_vertices();
        let s = family.num_subgraphs();
        if s > 64 {
            return Err(OracleError::TooLarge(s));
        }
        let mut masks = vec![0u64; n * n];
        for (c, g) in family.subgraphs().enumerate() {
            for e in g.edges() {
                let (a, b) = e.endpoints();
                masks[a * n + b] |= 1 << c;
                masks[b * n + a] |= 1 << c;
            }
        }
        Ok(ColorTable { n, masks })
    }

    #[inline]
    fn get(&self, a: Vertex, b: Vertex) -> u64 {
        self.masks[a * self.n + b]
    }
}

/// Kuhn-style matching between path edges (by index) and colors.
#[derive(Clone)]
struct ColorMatching {
    edge_masks: Vec<u64>,
    edge_color: Vec<usize>,
    color_edge: Vec<Option<usize>>,
}

impl ColorMatching {
    fn new(s: usize) -> ColorMatching {
        ColorMatching { edge_masks: Vec::new(), edge_color: Vec::new(), color_edge: vec![None; s] }
    }

    fn augment(&mut self, k: usize, seen: &mut u64) -> bool {
        let mut options = self.edge_masks[k] & !*seen;
        while options != 0 {
            let c = options.trailing_zeros() as usize;
            options &= options - 1;
            *seen |= 1 << c;
            let free = match self.color_edge[c] {
                None => true,
                Some(other) => self.augment(other, seen),
            };
            if free {
                self.color_edge[c] = Some(k);
                self.edge_color[k] = c;
                return true;
            }
        }
        false
    }

    /// Adds an edge with admissible colors `mask`; false if no system of distinct colors remains.
    fn push(&mut self, mask: u64) -> bool {
        let k = self.edge_masks.len();
        self.edge_masks.push(mask);
        self.edge_color.push(usize::MAX);
        let mut seen = 0;
        self.augment(k, &mut seen)
    }
}

enum Sink {
    Enumerate(Vec<Transversal>),
    Count(u128),
    Exists(Option<Transversal>),
    Cycles(Vec<Vec<Vertex>>),
}

struct HamSearch<'a> {
    n: usize,
    adj: &'a SimpleGraph,
    colors: Option<&'a ColorTable>,
    num_colors: usize,
    meter: &'a Meter,
    sink: Sink,
}

impl HamSearch<'_> {
    fn result_limit_hit(&self) -> bool {
        let len = match &self.sink {
            Sink::Enumerate(v) => v.len(),
            Sink::Cycles(v) => v.len(),
            Sink::Exists(found) => return found.is_some(),
            Sink::Count(_) => return false,
        };
        self.meter.budget.max_results.is_some_and(|m| len >= m)
    }

    fn dfs(&mut self, path: &mut Vec<Vertex>, visited: &mut [bool], matching: &ColorMatching) {
        if !self.meter.tick() || self.result_limit_hit() {
            return;
        }
        let last = *path.last().expect("nonempty path");
        if path.len() == self.n {
            // canonical direction: second vertex below the last one
            if path[1] < last && self.adj.has_edge(last, path[0]) {
                self.complete(path, matching);
            }
            return;
        }
        for &w in self.adj.neighbors(last) {
            if visited[w] {
                continue;
            }
            let mut next = matching.clone();
            if let Some(table) = self.colors {
                if !next.push(table.get(last, w)) {
                    continue;
                }
            }
            visited[w] = true;
            path.push(w);
            self.dfs(path, visited, &next);
            path.pop();
            visited[w] = false;
            if self.meter.exhausted() || self.result_limit_hit() {
                return;
            }
        }
    }

    fn complete(&mut self, path: &[Vertex], matching: &ColorMatching) {
        let n = self.n;
        let Some(table) = self.colors else {
            if let Sink::Cycles(out) = &mut self.sink {
                out.push(path.to_vec());
            }
            return;
        };
        let mut closed = matching.clone();
        if !closed.push(table.get(path[n - 1], path[0])) {
            return;
        }
        let edges: Vec<Edge> = (0..n).map(|k| Edge::new(path[k], path[(k + 1) % n])).collect();
        match &mut self.sink {
            Sink::Exists(found) => {
                let pairs = edges.iter().zip(&closed.edge_color).map(|(&e, &c)| (e, c)).collect();
                *found = Some(Transversal::new(TransversalKind::Cycle, pairs));
            }
            Sink::Count(total) => {
                *total += count_colorings(&closed.edge_masks, self.num_colors, self.meter);
            }
            Sink::Enumerate(out) => {
                let mut colors = vec![0; n];
                enumerate_colorings(&edges, &closed.edge_masks, 0, 0, &mut colors, out, self.meter);
            }
            Sink::Cycles(_) => unreachable!("cycle sink has no color table"),
        }
    }
}

/// Number of bijections edges -> colors with every edge in its color class.
fn count_colorings(masks: &[u64], num_colors: usize, meter: &Meter) -> u128 {
    // ways[used] over the first popcount(used) edges
    let full = if num_colors == 64 { u64::MAX } else { (1u64 << num_colors) - 1 };
    if num_colors <= 24 {
        let mut ways = vec![0u128; 1 << num_colors];
        ways[0] = 1;
        for used in 0..(1usize << num_colors) {
            let w = ways[used];
            if w == 0 {
                continue;
            }
            let k = used.count_ones() as usize;
            if k == masks.len() {
                continue;
            }
            let mut options = masks[k] & !(used as u64) & full;
            while options != 0 {
                let c = options.trailing_zeros() as usize;
                options &= options - 1;
                ways[used | (1 << c)] += w;
            }
        }
        return ways[full as usize];
    }
    fn rec(masks: &[u64], k: usize, used: u64, meter: &Meter) -> u128 {
        if k == masks.len() {
            return 1;
        }
        if !meter.tick() {
            return 0;
        }
        let mut options = masks[k] & !used;
        let mut total = 0;
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            total += rec(masks, k + 1, used | (1 << c), meter);
        }
        total
    }
    rec(masks, 0, 0, meter)
}

fn enumerate_colorings(
    edges: &[Edge],
    masks: &[u64],
    k: usize,
    used: u64,
    colors: &mut [usize],
    out: &mut Vec<Transversal>,
    meter: &Meter,
) {
    if k == edges.len() {
        let pairs = edges.iter().zip(colors.iter()).map(|(&e, &c)| (e, c)).collect();
        out.push(Transversal::new(TransversalKind::Cycle, pairs));
        return;
    }
    if !meter.tick() || meter.budget.max_results.is_some_and(|m| out.len() >= m) {
        return;
    }
    let mut options = masks[k] & !used;
    while options != 0 {
        let c = options.trailing_zeros() as usize;
        options &= options - 1;
        colors[k] = c;
        enumerate_colorings(edges, masks, k + 1, used | (1 << c), colors, out, meter);
    }
}

fn check_family(family: &SubgraphFamily, kind: FamilyKind) -> Result<ColorTable, OracleError> {
    let report = validate_family(family);
    if !report.is_valid() {
        return Err(OracleError::InvalidFamily(report.messages()));
    }
    if family.kind() != kind {
        return Err(OracleError::WrongKind);
    }
    ColorTable::new(family)
}

/// Runs the cycle search, one branch per neighbor of vertex 0.
fn ham_search(
    graph: &SimpleGraph,
    colors: Option<&ColorTable>,
    num_colors: usize,
    meter: &Meter,
    make_sink: impl Fn() -> Sink + Sync + Send,
    exec: Exec,
) -> Vec<Sink> {
    let n = graph.num_vertices();
    if n < 3 {
        return Vec::new();
    }
    let firsts: Vec<Vertex> = graph.neighbors(0).to_vec();
    exec.map(firsts, |w| {
        let mut search = HamSearch { n, adj: graph, colors, num_colors, meter, sink: make_sink() };
        let mut matching = ColorMatching::new(num_colors);
        if let Some(table) = colors {
            if !matching.push(table.get(0, w)) {
                return search.sink;
            }
        }
        let mut visited = vec![false; n];
        visited[0] = true;
        visited[w] = true;
        let mut path = vec![0, w];
        search.dfs(&mut path, &mut visited, &matching);
        search.sink
    })
}

/// All Hamiltonian transversals, sorted canonically.
pub fn enumerate_all_ham_transversals(
    family: &SubgraphFamily,
    budget: SearchBudget,
) -> Result<Vec<Transversal>, OracleError> {
    enumerate_all_ham_transversals_with(family, budget, Exec::default())
}

pub fn enumerate_all_ham_transversals_with(
    family: &SubgraphFamily,
    budget: SearchBudget,
    exec: Exec,
) -> Result<Vec<Transversal>, OracleError> {
    let table = check_family(family, FamilyKind::Hamiltonian)?;
    let meter = Meter::new(budget);
    let sinks =
        ham_search(family.base(), Some(&table), family.num_subgraphs(), &meter, || Sink::Enumerate(Vec::new()), exec);
    let mut out: Vec<Transversal> = sinks
        .into_iter()
        .flat_map(|s| match s {
            Sink::Enumerate(v) => v,
            _ => Vec::new(),
        })
        .collect();
    out.sort();
    out.dedup();
    let truncated = budget.max_results.is_some_and(|m| out.len() >= m);
    if meter.exhausted() || truncated {
        return Err(OracleError::BudgetExceeded { partial: out, nodes: meter.count() });
    }
    Ok(out)
}

/// Number of Hamiltonian transversals.
pub fn count_ham_transversals(family: &SubgraphFamily, budget: SearchBudget) -> Result<u128, OracleError> {
    count_ham_transversals_with(family, budget, Exec::default())
}

pub fn count_ham_transversals_with(
    family: &SubgraphFamily,
    budget: SearchBudget,
    exec: Exec,
) -> Result<u128, OracleError> {
    let table = check_family(family, FamilyKind::Hamiltonian)?;
    let meter = Meter::new(budget);
    let sinks = ham_search(family.base(), Some(&table), family.num_subgraphs(), &meter, || Sink::Count(0), exec);
    let total = sinks
        .into_iter()
        .map(|s| match s {
            Sink::Count(c) => c,
            _ => 0,
        })
        .sum();
    if meter.exhausted() {
        return Err(OracleError::BudgetExceeded { partial: Vec::new(), nodes: meter.count() });
    }
    Ok(total)
}

/// Some Hamiltonian transversal, or `None` if the search space is exhausted.
pub fn exists_ham_transversal(
    family: &SubgraphFamily,
    budget: SearchBudget,
) -> Result<Option<Transversal>, OracleError> {
    let table = check_family(family, FamilyKind::Hamiltonian)?;
    let meter = Meter::new(budget);
    // sequential so the first hit stops the search
    let sinks = ham_search(
        family.base(),
        Some(&table),
        family.num_subgraphs(),
        &meter,
        || Sink::Exists(None),
        Exec::Sequential,
    );
    let found = sinks.into_iter().find_map(|s| match s {
        Sink::Exists(t) => t,
        _ => None,
    });
    match found {
        Some(t) => Ok(Some(t)),
        None if meter.exhausted() => Err(OracleError::BudgetExceeded { partial: Vec::new(), nodes: meter.count() }),
        None => Ok(None),
    }
}

/// Hamiltonian cycles of a plain graph, each listed once from vertex 0.
pub fn enumerate_hamiltonian_cycles(
    graph: &SimpleGraph,
    budget: SearchBudget,
) -> Result<Vec<Vec<Vertex>>, OracleError> {
    let meter = Meter::new(budget);
    let sinks = ham_search(graph, None, 0, &meter, || Sink::Cycles(Vec::new()), Exec::default());
    let mut out: Vec<Vec<Vertex>> = sinks
        .into_iter()
        .flat_map(|s| match s {
            Sink::Cycles(v) => v,
            _ => Vec::new(),
        })
        .collect();
    out.sort();
    if meter.exhausted() || budget.max_results.is_some_and(|m| out.len() >= m) {
        return Err(OracleError::BudgetExceeded { partial: Vec::new(), nodes: meter.count() });
    }
    Ok(out)
}

/// Number of Hamiltonian cycles of a plain graph.
pub fn count_hamiltonian_cycles(graph: &SimpleGraph, budget: SearchBudget) -> Result<usize, OracleError> {
    enumerate_hamiltonian_cycles(graph, budget).map(|v| v.len())
}

struct PmSearch<'a> {
    family: &'a SubgraphFamily,
    table: &'a ColorTable,
    meter: &'a Meter,
    out: Vec<Transversal>,
}

impl PmSearch<'_> {
    fn dfs(&mut self, covered: &mut [bool], used: u64, pairs: &mut Vec<(Edge, usize)>) {
        if !self.meter.tick() || self.meter.budget.max_results.is_some_and(|m| self.out.len() >= m) {
            return;
        }
        let Some(u) = covered.iter().position(|&c| !c) else {
            self.out.push(Transversal::new(TransversalKind::Matching, pairs.clone()));
            return;
        };
        covered[u] = true;
        for &w in self.family.base().neighbors(u) {
            if covered[w] {
                continue;
            }
            let mut options = self.table.get(u, w) & !used;
            while options != 0 {
                let c = options.trailing_zeros() as usize;
                options &= options - 1;
                covered[w] = true;
                pairs.push((Edge::new(u, w), c));
                self.dfs(covered, used | (1 << c), pairs);
                pairs.pop();
                covered[w] = false;
            }
        }
        covered[u] = false;
    }
}

/// All perfect matching transversals, sorted canonically.
pub fn enumerate_all_pm_transversals(
    family: &SubgraphFamily,
    budget: SearchBudget,
) -> Result<Vec<Transversal>, OracleError> {
    enumerate_all_pm_transversals_with(family, budget, Exec::default())
}

pub fn enumerate_all_pm_transversals_with(
    family: &SubgraphFamily,
    budget: SearchBudget,
    exec: Exec,
) -> Result<Vec<Transversal>, OracleError> {
    let table = check_family(family, FamilyKind::Matching)?;
    let meter = Meter::new(budget);
    let n = family.num_vertices();
    if n == 0 {
        return Ok(vec![Transversal::new(TransversalKind::Matching, Vec::new())]);
    }
    // one branch per (partner of vertex 0, color)
    let firsts: Vec<(Vertex, usize)> = family
        .base()
        .neighbors(0)
        .iter()
        .flat_map(|&w| {
            let mask = table.get(0, w);
            (0..64).filter(move |c| mask >> c & 1 == 1).map(move |c| (w, c))
        })
        .collect();
    let branches = exec.map(firsts, |(w, c)| {
        let mut search = PmSearch { family, table: &table, meter: &meter, out: Vec::new() };
        let mut covered = vec![false; n];
        covered[0] = true;
        covered[w] = true;
        let mut pairs = vec![(Edge::new(0, w), c)];
        search.dfs(&mut covered, 1 << c, &mut pairs);
        search.out
    });
    let mut out: Vec<Transversal> = branches.into_iter().flatten().collect();
    out.sort();
    let truncated = budget.max_results.is_some_and(|m| out.len() >= m);
    if meter.exhausted() || truncated {
        return Err(OracleError::BudgetExceeded { partial: out, nodes: meter.count() });
    }
    Ok(out)
}

pub fn count_pm_transversals(family: &SubgraphFamily, budget: SearchBudget) -> Result<u128, OracleError> {
    enumerate_all_pm_transversals(family, budget).map(|v| v.len() as u128)
}

/// Dispatches on the family kind.
pub fn count_transversals(family: &SubgraphFamily, budget: SearchBudget) -> Result<u128, OracleError> {
    match family.kind() {
        FamilyKind::Hamiltonian => count_ham_transversals(family, budget),
        FamilyKind::Matching => count_pm_transversals(family, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_transversal;
    use std::sync::Arc;

    fn k4() -> SimpleGraph {
        SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn forced_ham(n: usize) -> SubgraphFamily {
        let lists: Vec<Vec<(usize, usize)>> = (0..n).map(|i| vec![(i, (i + 1) % n)]).collect();
        SubgraphFamily::from_edge_lists(n, &lists, FamilyKind::Hamiltonian).unwrap()
    }

    #[test]
    fn forced_instance_has_one() {
        let f = forced_ham(7);
        let all = enumerate_all_ham_transversals(&f, SearchBudget::default()).unwrap();
        assert_eq!(all, vec![Transversal::canonical_cycle(7)]);
        assert_eq!(count_ham_transversals(&f, SearchBudget::default()), Ok(1));
    }

    #[test]
    fn k4_all_equal_has_72() {
        let f = SubgraphFamily::all_equal(k4(), FamilyKind::Hamiltonian);
        let all = enumerate_all_ham_transversals(&f, SearchBudget::default()).unwrap();
        assert_eq!(all.len(), 72);
        assert!(all.iter().all(|t| validate_transversal(&f, t).is_valid()));
        assert_eq!(count_ham_transversals(&f, SearchBudget::default()), Ok(72));
    }

    #[test]
    fn empty_subgraph_has_none() {
        let k = k4();
        let g = Arc::new(k.clone());
        let subs = vec![Arc::new(SimpleGraph::empty(4)), g.clone(), g.clone(), g];
        let f = SubgraphFamily::new(k, subs, FamilyKind::Hamiltonian);
        assert_eq!(count_ham_transversals(&f, SearchBudget::default()), Ok(0));
        assert_eq!(exists_ham_transversal(&f, SearchBudget::default()), Ok(None));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = SubgraphFamily::all_equal(k4(), FamilyKind::Hamiltonian);
        let err = enumerate_all_ham_transversals(&f, SearchBudget::nodes(10)).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }));
        let capped = SearchBudget { max_results: Some(5), ..SearchBudget::default() };
        assert!(matches!(
            enumerate_all_ham_transversals(&f, capped),
            Err(OracleError::BudgetExceeded { ref partial, .. }) if partial.len() >= 5
        ));
    }

    #[test]
    fn forced_matching_has_one() {
        let lists: Vec<Vec<(usize, usize)>> = (0..3).map(|i| vec![(i, 3 + i)]).collect();
        let f = SubgraphFamily::from_edge_lists(6, &lists, FamilyKind::Matching).unwrap();
        let all = enumerate_all_pm_transversals(&f, SearchBudget::default()).unwrap();
        assert_eq!(all, vec![Transversal::canonical_matching(3)]);
    }

    #[test]
    fn two_pairs_on_k4_have_six() {
        let f = SubgraphFamily::all_equal(k4(), FamilyKind::Matching);
        assert_eq!(count_pm_transversals(&f, SearchBudget::default()), Ok(6));
    }

    #[test]
    fn swap_instance_has_two() {
        let lists = vec![vec![(0, 2), (0, 3)], vec![(1, 3), (1, 2)]];
        let f = SubgraphFamily::from_edge_lists(4, &lists, FamilyKind::Matching).unwrap();
        assert_eq!(count_pm_transversals(&f, SearchBudget::default()), Ok(2));
    }

    #[test]
    fn planted_family_exists() {
        let f = forced_ham(6);
        let t = exists_ham_transversal(&f, SearchBudget::default()).unwrap().unwrap();
        assert!(validate_transversal(&f, &t).is_valid());
    }

    #[test]
    fn plain_cycle_counts() {
        assert_eq!(count_hamiltonian_cycles(&k4(), SearchBudget::default()), Ok(3));
        let k5 = SimpleGraph::from_edges(5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)))).unwrap();
        assert_eq!(count_hamiltonian_cycles(&k5, SearchBudget::default()), Ok(12));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = SubgraphFamily::all_equal(k4(), FamilyKind::Hamiltonian);
        let a = enumerate_all_ham_transversals_with(&f, SearchBudget::default(), Exec::Sequential).unwrap();
        let b = enumerate_all_ham_transversals_with(&f, SearchBudget::default(), Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
