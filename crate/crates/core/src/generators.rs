//! Seeded instance families.
//!
//! Every generator draws color `i` from its own stream of the seed, so output
//! does not depend on thread scheduling. Planted transversals are returned
//! naturally indexed.

use std::collections::{BTreeSet, HashMap};

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng as _;
use thiserror::Error;

use crate::digraph::{circular_distance, pred, succ};
use crate::exec::Exec;
use crate::graph::{Edge, FamilyKind, SimpleGraph, SubgraphFamily, Vertex};
use crate::rng::stream;
use crate::transversal::Transversal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("infeasible degree: {0}")]
    InfeasibleDegree(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("infeasible witness: {0}")]
    InfeasibleWitness(String),
}

fn cycle_edge(i: usize, n: usize) -> (Vertex, Vertex) {
    (i, succ(i, n))
}

fn is_cycle_edge(a: Vertex, b: Vertex, n: usize) -> bool {
    circular_distance(a, b, n) == 1
}

fn build(n: usize, lists: Vec<Vec<(Vertex, Vertex)>>, kind: FamilyKind) -> SubgraphFamily {
    SubgraphFamily::from_edge_lists(n, &lists, kind).expect("generated edges are in range and loop-free")
}

/// Planted cycle `0..n-1`; `G_i` holds its cycle edge plus `extra_degree` chords at `i` or `i+1`.
pub fn gen_planted_ham_family(
    n: usize,
    extra_degree: usize,
    seed: u64,
) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::InfeasibleDegree(format!("need n >= 3, got {n}")));
    }
    let pool_size = 2 * (n - 3);
    if extra_degree > pool_size {
        return Err(GeneratorError::InfeasibleDegree(format!(
            "extra_degree {extra_degree} exceeds the {pool_size} chords available per subgraph"
        )));
    }
    let lists = Exec::default().map_range(n, |i| {
        let j = succ(i, n);
        let pool: Vec<(Vertex, Vertex)> = [i, j]
            .into_iter()
            .flat_map(|a| (0..n).filter(move |&b| b != a && !is_cycle_edge(a, b, n)).map(move |b| (a, b)))
            .collect();
        let mut rng = stream(seed, i as u64);
        let mut list = vec![cycle_edge(i, n)];
        list.extend(sample(&mut rng, pool.len(), extra_degree).into_iter().map(|k| pool[k]));
        list
    });
    Ok((build(n, lists, FamilyKind::Hamiltonian), Transversal::canonical_cycle(n)))
}

fn dirac_target(n: usize, c: f64) -> Result<usize, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::InfeasibleDegree(format!("need n >= 3, got {n}")));
    }
    if !(0.5..=1.0).contains(&c) {
        return Err(GeneratorError::InfeasibleDegree(format!("c = {c} outside [1/2, 1]")));
    }
    Ok(((c * n as f64).ceil() as usize).min(n - 1))
}

/// Random spanning subgraph of `K_n` with minimum degree `target`, never deleting `keep`.
fn guarded_deletion(n: usize, target: usize, keep: Option<Edge>, seed: u64, color: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut rng = stream(seed, color as u64);
    edges.shuffle(&mut rng);
    let mut degree = vec![n - 1; n];
    let mut kept = Vec::with_capacity(edges.len());
    let delete_fraction: f64 = rng.random_range(0.5..1.0);
    for (a, b) in edges {
        let guarded = keep == Some(Edge::new(a, b));
        if !guarded && degree[a] > target && degree[b] > target && rng.random_bool(delete_fraction) {
            degree[a] -= 1;
            degree[b] -= 1;
        } else {
            kept.push((a, b));
        }
    }
    kept
}

/// Each `G_i` a random subgraph of `K_n` with `δ(G_i) ≥ ⌈cn⌉` (capped at `n-1`).
pub fn gen_dirac_family(n: usize, c: f64, seed: u64) -> Result<SubgraphFamily, GeneratorError> {
    let target = dirac_target(n, c)?;
    let lists = Exec::default().map_range(n, |i| guarded_deletion(n, target, None, seed, i));
    let mut family = build(n, lists, FamilyKind::Hamiltonian);
    let complete = SimpleGraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap();
    if family.base() != &complete {
        // the base is K_n even if some edge was deleted everywhere
        let subgraphs = (0..n).map(|c| std::sync::Arc::new(family.subgraph(c).clone())).collect();
        family = SubgraphFamily::new(complete, subgraphs, FamilyKind::Hamiltonian);
    }
    Ok(family)
}

/// As [`gen_dirac_family`], but `G_i` always keeps the cycle edge `(i, i+1)`.
pub fn gen_planted_dirac_family(n: usize, c: f64, seed: u64) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    let target = dirac_target(n, c)?;
    let lists = Exec::default().map_range(n, |i| {
        let (a, b) = cycle_edge(i, n);
        guarded_deletion(n, target, Some(Edge::new(a, b)), seed, i)
    });
    let complete = SimpleGraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap();
    let subgraphs = lists
        .into_iter()
        .map(|l| std::sync::Arc::new(SimpleGraph::from_edges(n, l).expect("distinct edges")))
        .collect();
    Ok((SubgraphFamily::new(complete, subgraphs, FamilyKind::Hamiltonian), Transversal::canonical_cycle(n)))
}

const REGULAR_RESTARTS: usize = 50;

/// Random `m`-regular graph containing the cycle `0..n-1`; every `G_i` equals it.
///
/// The remaining `m - 2` degree slots are paired at random and then repaired
/// by random switches until the graph is simple. Not uniform.
pub fn gen_regular_all_equal(n: usize, m: usize, seed: u64) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    if m < 2 || m >= n || (n * m) % 2 == 1 {
        return Err(GeneratorError::InfeasibleDegree(format!("no {m}-regular Hamiltonian graph on {n} vertices")));
    }
    let mut rng = stream(seed, 0);
    for _ in 0..REGULAR_RESTARTS {
        if let Some(extra) = random_pairing(n, m - 2, &mut rng) {
            let edges = (0..n).map(|i| cycle_edge(i, n)).chain(extra);
            let g = SimpleGraph::from_edges(n, edges).expect("repaired pairing is simple");
            return Ok((SubgraphFamily::all_equal(g, FamilyKind::Hamiltonian), Transversal::canonical_cycle(n)));
        }
    }
    Err(GeneratorError::GenerationFailed(format!("no simple pairing after {REGULAR_RESTARTS} restarts")))
}

/// Pairs `k` slots per vertex avoiding loops, repeats and cycle edges.
fn random_pairing(n: usize, k: usize, rng: &mut crate::rng::Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut slots: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    slots.shuffle(rng);
    let mut pairs: Vec<(Vertex, Vertex)> = slots.chunks(2).map(|c| (c[0], c[1])).collect();
    let mut count: HashMap<Edge, usize> = HashMap::new();
    for i in 0..n {
        let (a, b) = cycle_edge(i, n);
        *count.entry(Edge::new(a, b)).or_default() += 1;
    }
    for &(a, b) in &pairs {
        if a != b {
            *count.entry(Edge::new(a, b)).or_default() += 1;
        }
    }
    let bad = |count: &HashMap<Edge, usize>, (a, b): (Vertex, Vertex)| a == b || count[&Edge::new(a, b)] > 1;
    let mut budget = 200 * pairs.len() + 1000;
    loop {
        let Some(p) = (0..pairs.len()).find(|&i| bad(&count, pairs[i])) else {
            return Some(pairs);
        };
        if budget == 0 || pairs.len() < 2 {
            return None;
        }
        budget -= 1;
        let q = rng.random_range(0..pairs.len());
        if q == p {
            continue;
        }
        let (a, b) = pairs[p];
        let (c, d) = pairs[q];
        let (x, y) = if rng.random_bool(0.5) { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
        let fresh = |e: (Vertex, Vertex)| e.0 != e.1 && !count.contains_key(&Edge::new(e.0, e.1));
        if !fresh(x) || !fresh(y) || Edge::try_new(x.0, x.1) == Edge::try_new(y.0, y.1) {
            continue;
        }
        for (u, v) in [(a, b), (c, d)] {
            if u != v {
                let e = Edge::new(u, v);
                let slot = count.get_mut(&e).expect("counted");
                *slot -= 1;
                if *slot == 0 {
                    count.remove(&e);
                }
            }
        }
        for (u, v) in [x, y] {
            *count.entry(Edge::new(u, v)).or_default() += 1;
        }
        pairs[p] = x;
        pairs[q] = y;
    }
}

/// Planted matching `x_i y_i` (`x_i = i`, `y_i = n + i`); `G_i` adds `extra_degree` cross edges at `x_i` or `y_i`.
pub fn gen_planted_pm_family(
    n: usize,
    extra_degree: usize,
    seed: u64,
) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::InfeasibleDegree("need n >= 1".into()));
    }
    let pool_size = 2 * (n - 1);
    if extra_degree > pool_size {
        return Err(GeneratorError::InfeasibleDegree(format!(
            "extra_degree {extra_degree} exceeds the {pool_size} cross edges available per subgraph"
        )));
    }
    let lists = Exec::default().map_range(n, |i| {
        let pool: Vec<(Vertex, Vertex)> = (0..n).filter(|&j| j != i).flat_map(|j| [(i, n + j), (j, n + i)]).collect();
        let mut rng = stream(seed, i as u64);
        let mut list = vec![(i, n + i)];
        list.extend(sample(&mut rng, pool.len(), extra_degree).into_iter().map(|k| pool[k]));
        list
    });
    Ok((build(2 * n, lists, FamilyKind::Matching), Transversal::canonical_matching(n)))
}

/// `m`-regular bipartite graph on `2n` vertices containing `x_i y_i`; every `G_i` equals it.
///
/// Sides are shuffled by random labels `ℓ`, and `x_i ~ y_j` iff `(ℓ_j - ℓ_i) mod n`
/// lies in a random offset set containing 0.
pub fn gen_regular_bipartite_all_equal(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    if m == 0 || m > n {
        return Err(GeneratorError::InfeasibleDegree(format!("no {m}-regular bipartite graph with sides of {n}")));
    }
    let mut rng = stream(seed, 0);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut offsets = vec![false; n];
    offsets[0] = true;
    for k in sample(&mut rng, n - 1, m - 1) {
        offsets[k + 1] = true;
    }
    let edges = (0..n).flat_map(|i| {
        let labels = &labels;
        let offsets = &offsets;
        (0..n).filter(move |&j| offsets[(labels[j] + n - labels[i]) % n]).map(move |j| (i, n + j))
    });
    let g = SimpleGraph::from_edges(2 * n, edges).expect("distinct cross edges");
    Ok((SubgraphFamily::all_equal(g, FamilyKind::Matching), Transversal::canonical_matching(n)))
}

fn check_spread(n: usize, s: &[Vertex]) -> Result<(), GeneratorError> {
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(GeneratorError::InfeasibleWitness(format!("vertex {v} out of range")));
    }
    for (k, &a) in s.iter().enumerate() {
        for &b in &s[k + 1..] {
            if circular_distance(a, b, n) < 3 {
                return Err(GeneratorError::InfeasibleWitness(format!("{a} and {b} are joined by a red edge")));
            }
        }
    }
    Ok(())
}

/// Planted cycle family whose full RYB digraph has `d*(S) = d` exactly.
///
/// For each `s ∈ S`, `G_{s-1}` gets `d` edges from `s-1` and `G_s` gets `d` edges
/// from `s+1`, all to other members of `S`. Noise chords avoid `S`.
pub fn gen_witness_instance_ham(
    n: usize,
    s: &[Vertex],
    d: usize,
    seed: u64,
) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    let members: BTreeSet<Vertex> = s.iter().copied().collect();
    let s: Vec<Vertex> = members.iter().copied().collect();
    check_spread(n, &s)?;
    if d == 0 {
        return Err(GeneratorError::InfeasibleWitness("d must be at least 1".into()));
    }
    if s.len() < d + 1 {
        return Err(GeneratorError::InfeasibleWitness(format!("|S| = {} cannot support d = {d}", s.len())));
    }
    let mut lists: Vec<Vec<(Vertex, Vertex)>> = (0..n).map(|i| vec![cycle_edge(i, n)]).collect();
    let mut rng = stream(seed, 0);
    for &v in &s {
        let others: Vec<Vertex> = s.iter().copied().filter(|&t| t != v).collect();
        for k in sample(&mut rng, others.len(), d) {
            lists[pred(v, n)].push((pred(v, n), others[k]));
        }
        for k in sample(&mut rng, others.len(), d) {
            lists[v].push((succ(v, n), others[k]));
        }
    }
    let outside: Vec<Vertex> = (0..n).filter(|v| !members.contains(v)).collect();
    let noise: Vec<(Vertex, Vertex)> = outside
        .iter()
        .flat_map(|&a| outside.iter().filter(move |&&b| a < b && !is_cycle_edge(a, b, n)).map(move |&b| (a, b)))
        .collect();
    if !noise.is_empty() {
        for list in lists.iter_mut() {
            if rng.random_bool(0.5) {
                list.push(noise[rng.random_range(0..noise.len())]);
            }
        }
    }
    Ok((build(n, lists, FamilyKind::Hamiltonian), Transversal::canonical_cycle(n)))
}

/// Planted matching family whose full RB digraph has `d×(X) = d` exactly, `X = {x_0..x_{n-1}}`.
///
/// `G_i` gets `d` edges from `x_i` to other `y_j`; noise cross edges at `y_i` do not escape `X`.
pub fn gen_witness_instance_pm(n: usize, d: usize, seed: u64) -> Result<(SubgraphFamily, Transversal), GeneratorError> {
    if n < d + 1 {
        return Err(GeneratorError::InfeasibleWitness(format!("{n} pairs cannot support d = {d}")));
    }
    let lists = Exec::default().map_range(n, |i| {
        let mut rng = stream(seed, i as u64);
        let others: Vec<Vertex> = (0..n).filter(|&j| j != i).collect();
        let mut list = vec![(i, n + i)];
        list.extend(sample(&mut rng, others.len(), d).into_iter().map(|k| (i, n + others[k])));
        if !others.is_empty() && rng.random_bool(0.5) {
            let j = others[rng.random_range(0..others.len())];
            list.push((j, n + i));
        }
        list
    });
    Ok((build(2 * n, lists, FamilyKind::Matching), Transversal::canonical_matching(n)))
}

/// Uniformly random set of `size` vertices with pairwise circular distance at least 3.
pub fn random_spread_set(n: usize, size: usize, seed: u64) -> Option<Vec<Vertex>> {
    if size == 0 || 3 * size > n {
        return (size == 0).then(Vec::new);
    }
    // choose gaps: place `size` members with at least 2 free vertices after each
    let free = n - 3 * size;
    let mut rng = stream(seed, 0);
    let mut bars: Vec<usize> = sample(&mut rng, free + size, size).into_vec();
    bars.sort_unstable();
    let offset = rng.random_range(0..n);
    let mut out: Vec<Vertex> = bars.iter().enumerate().map(|(k, &b)| (offset + b + 2 * k) % n).collect();
    out.sort_unstable();
    Some(out)
}
