//! From one transversal to at least `(d+1)!`.
//!
//! [`enumerate_omega_ham`] / [`enumerate_omega_pm`] list the constrained
//! spaces `Ω` exhaustively. The `find_saturated_vertex_*` loops collect, for
//! one boundary vertex `v0`, a witness transversal in `Ω` through every edge
//! joining `v0` to `S`; [`many_ham_transversals`] and [`many_pm_transversals`]
//! then recurse once per such edge with one set member fewer.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::digraph::RybDigraph;
use crate::digraph::{build_full_rb, build_full_ryb, pred, succ, CandidateSet, DigraphError, RbDigraph, RedStructure};
use crate::exchange::{second_ham_transversal, second_pm_transversal, ExchangeError};
use crate::exec::Exec;
use crate::graph::{Color, Edge, FamilyKind, SimpleGraph, SubgraphFamily, Vertex};
use crate::transversal::{Transversal, TransversalKind};
use crate::validate::{is_naturally_indexed, naturally_index, IndexingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplierError {
    #[error("d = {0}: the set does not dominate")]
    DStarTooSmall(usize),
    #[error("transversal is not naturally indexed")]
    NotNaturallyIndexed,
    #[error("family kind does not match")]
    WrongKind,
    #[error("second transversal used no unrealized arc")]
    NoProgress,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Indexing(#[from] IndexingError),
}

/// Witnesses collected by a saturation loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WitnessTable {
    /// `(v, e)` -> a member of `Ω` containing `e`, where `e` joins `v` toward `S`.
    pub witnesses: BTreeMap<(Vertex, Edge), Transversal>,
    /// Arcs at each boundary vertex still without a witness.
    pub unrealized: BTreeMap<Vertex, BTreeSet<Vertex>>,
    /// Calls to the second-transversal routine.
    pub iterations: usize,
}

impl WitnessTable {
    /// Witnessed edges at `v`, ascending by the far endpoint.
    pub fn edges_at(&self, v: Vertex) -> Vec<(Vertex, &Transversal)> {
        let mut out: Vec<(Vertex, &Transversal)> = self
            .witnesses
            .range((v, Edge::new(0, 1))..)
            .take_while(|((u, _), _)| *u == v)
            .map(|((_, e), t)| (e.other(v), t))
            .collect();
        out.sort_by_key(|&(w, _)| w);
        out
    }

    fn record(&mut self, v: Vertex, w: Vertex, t: &Transversal) -> bool {
        let fresh = self.unrealized.get_mut(&v).is_some_and(|u| u.remove(&w));
        self.witnesses.entry((v, Edge::new(v, w))).or_insert_with(|| t.clone());
        fresh
    }
}

fn check_cycle_base(family: &SubgraphFamily, base: &Transversal, s: &CandidateSet) -> Result<(), MultiplierError> {
    let n = family.num_vertices();
    if family.kind() != FamilyKind::Hamiltonian || base.kind() != TransversalKind::Cycle {
        return Err(MultiplierError::WrongKind);
    }
    if !is_naturally_indexed(base, n) {
        return Err(MultiplierError::NotNaturallyIndexed);
    }
    if s.num_vertices() != n {
        return Err(DigraphError::VertexOutOfRange(s.num_vertices()).into());
    }
    if !RybDigraph::red_only(n).is_red_independent(s) {
        return Err(DigraphError::NotRedIndependent.into());
    }
    Ok(())
}

fn check_matching_base(family: &SubgraphFamily, base: &Transversal, s: &CandidateSet) -> Result<(), MultiplierError> {
    let n = family.num_vertices();
    if family.kind() != FamilyKind::Matching || base.kind() != TransversalKind::Matching {
        return Err(MultiplierError::WrongKind);
    }
    if !is_naturally_indexed(base, n) {
        return Err(MultiplierError::NotNaturallyIndexed);
    }
    if s.num_vertices() != n || !RbDigraph::red_only(n / 2).is_maximal_red_independent(s) {
        return Err(DigraphError::NotMaximalRedIndependent.into());
    }
    Ok(())
}

/// Stretch of the base cycle strictly between consecutive members of `S`.
struct Segment {
    vertices: Vec<Vertex>,
}

impl Segment {
    fn first(&self) -> Vertex {
        self.vertices[0]
    }

    fn last(&self) -> Vertex {
        self.vertices[self.vertices.len() - 1]
    }
}

fn segments(n: usize, s: &CandidateSet) -> Vec<Segment> {
    let m = s.members();
    (0..m.len())
        .map(|k| {
            let next = m[(k + 1) % m.len()];
            let mut vertices = Vec::new();
            let mut v = succ(m[k], n);
            while v != next {
                vertices.push(v);
                v = succ(v, n);
            }
            Segment { vertices }
        })
        .collect()
}

/// Color of the base edge joining a cycle neighbor `v` of `S` to `S`.
fn boundary_color(v: Vertex, n: usize, s: &CandidateSet) -> Color {
    if s.contains(succ(v, n)) {
        v
    } else {
        pred(v, n)
    }
}

/// All members of `Ω(C, φ, S)`, sorted.
///
/// Backtracks over cyclic arrangements alternating members of `S` with the
/// (oriented) segments of `C - S`, starting at the lowest member.
pub fn enumerate_omega_ham(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
) -> Result<Vec<Transversal>, MultiplierError> {
    check_cycle_base(family, base, s)?;
    let n = family.num_vertices();
    if s.is_empty() {
        return Ok(vec![base.clone()]);
    }
    let segs = segments(n, s);
    let members = s.members();
    let fixed: Vec<(Edge, Color)> =
        segs.iter().flat_map(|seg| seg.vertices.windows(2).map(|w| (Edge::new(w[0], w[1]), w[0]))).collect();
    let admissible = |v: Vertex, t: Vertex| family.in_subgraph(boundary_color(v, n, s), v, t);

    struct Walk<'a> {
        segs: &'a [Segment],
        members: &'a [Vertex],
        used_seg: Vec<bool>,
        used_member: Vec<bool>,
        links: Vec<(Vertex, Vertex)>,
        out: BTreeSet<Vec<(Vertex, Vertex)>>,
    }

    fn extend(w: &mut Walk<'_>, cur: Vertex, placed: usize, ok: &dyn Fn(Vertex, Vertex) -> bool) {
        for k in 0..w.segs.len() {
            if w.used_seg[k] {
                continue;
            }
            let (a, b) = (w.segs[k].first(), w.segs[k].last());
            for (entry, exit) in [(a, b), (b, a)] {
                if !ok(entry, cur) {
                    continue;
                }
                w.used_seg[k] = true;
                w.links.push((entry, cur));
                if placed == w.segs.len() {
                    if ok(exit, w.members[0]) {
                        w.links.push((exit, w.members[0]));
                        let mut key = w.links.clone();
                        key.sort_unstable();
                        w.out.insert(key);
                        w.links.pop();
                    }
                } else {
                    for j in 1..w.members.len() {
                        if w.used_member[j] || !ok(exit, w.members[j]) {
                            continue;
                        }
                        w.used_member[j] = true;
                        w.links.push((exit, w.members[j]));
                        extend(w, w.members[j], placed + 1, ok);
                        w.links.pop();
                        w.used_member[j] = false;
                    }
                }
                w.links.pop();
                w.used_seg[k] = false;
            }
        }
    }

    let mut walk = Walk {
        segs: &segs,
        members,
        used_seg: vec![false; segs.len()],
        used_member: vec![false; members.len()],
        links: Vec::new(),
        out: BTreeSet::new(),
    };
    walk.used_member[0] = true;
    extend(&mut walk, members[0], 1, &admissible);
    let mut out: Vec<Transversal> = walk
        .out
        .into_iter()
        .map(|links| {
            let mut pairs = fixed.clone();
            pairs.extend(links.into_iter().map(|(v, t)| (Edge::new(v, t), boundary_color(v, n, s))));
            Transversal::new(TransversalKind::Cycle, pairs)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// All members of `Ω(M, φ, S)`: perfect matchings between `S` and its complement
/// with `s–w` admissible iff it lies in the subgraph colored like `s`'s base edge.
pub fn enumerate_omega_pm(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
) -> Result<Vec<Transversal>, MultiplierError> {
    check_matching_base(family, base, s)?;
    let total = family.num_vertices();
    let n = total / 2;
    let inside: Vec<Vertex> = (0..n).map(|i| if s.contains(i) { i } else { n + i }).collect();
    let options: Vec<Vec<Vertex>> = (0..n)
        .map(|i| family.subgraph(i).neighbors(inside[i]).iter().copied().filter(|&w| !s.contains(w)).collect())
        .collect();

    fn rec(
        i: usize,
        options: &[Vec<Vertex>],
        inside: &[Vertex],
        used: &mut [bool],
        chosen: &mut Vec<(Edge, Color)>,
        out: &mut Vec<Transversal>,
    ) {
        if i == options.len() {
            out.push(Transversal::new(TransversalKind::Matching, chosen.clone()));
            return;
        }
        for &w in &options[i] {
            if used[w] {
                continue;
            }
            used[w] = true;
            chosen.push((Edge::new(inside[i], w), i));
            rec(i + 1, options, inside, used, chosen, out);
            chosen.pop();
            used[w] = false;
        }
    }

    let mut out = Vec::new();
    rec(0, &options, &inside, &mut vec![false; total], &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Finds a cycle neighbor `v0` of `S` all of whose edges into `S` (in `G_{φ(v0 s0)}`) have witnesses in `Ω`.
pub fn find_saturated_vertex_ham(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    h: &RybDigraph,
) -> Result<(Vertex, WitnessTable), MultiplierError> {
    check_cycle_base(family, base, s)?;
    let n = family.num_vertices();
    let d = h.d_star(s)?;
    if d == 0 {
        return Err(MultiplierError::DStarTooSmall(0));
    }
    let mut table = WitnessTable::default();
    // boundary vertex -> (its base neighbor in S, is it a yellow tail)
    let mut boundary: Vec<(Vertex, Vertex, bool)> = Vec::new();
    for &m in s.members() {
        boundary.push((pred(m, n), m, true));
        boundary.push((succ(m, n), m, false));
    }
    boundary.sort_unstable();
    for &(v, m, yellow) in &boundary {
        let arcs = if yellow { h.yellow(v) } else { h.blue(v) };
        table.unrealized.insert(v, arcs.iter().copied().filter(|&t| s.contains(t)).collect());
        table.record(v, m, base);
    }
    loop {
        if let Some(&(v0, _, _)) = boundary.iter().find(|(v, _, _)| table.unrealized[v].is_empty()) {
            return Ok((v0, table));
        }
        let mut yellow = Vec::new();
        let mut blue = Vec::new();
        for &(v, _, is_yellow) in &boundary {
            let t = *table.unrealized[&v].first().expect("nonempty");
            if is_yellow {
                yellow.push((v, t));
            } else {
                blue.push((v, t));
            }
        }
        let j = RybDigraph::from_arcs(n, yellow, blue);
        let second = second_ham_transversal(family, base, s, &j)?;
        table.iterations += 1;
        let adj = second.adjacency(n);
        let mut progress = false;
        for &(v, _, _) in &boundary {
            for &t in adj[v].iter().filter(|&&t| s.contains(t)) {
                progress |= table.record(v, t, &second);
            }
        }
        if !progress {
            return Err(MultiplierError::NoProgress);
        }
    }
}

/// Finds `v0 ∈ S` all of whose blue arcs leaving `S` have witnesses in `Ω`.
pub fn find_saturated_vertex_pm(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    h: &RbDigraph,
) -> Result<(Vertex, WitnessTable), MultiplierError> {
    check_matching_base(family, base, s)?;
    let d = h.d_cross(s)?;
    if d == 0 {
        return Err(MultiplierError::DStarTooSmall(0));
    }
    let mut table = WitnessTable::default();
    for &v in s.members() {
        table.unrealized.insert(v, h.blue(v).iter().copied().filter(|&w| !s.contains(w)).collect());
        table.record(v, h.partner(v), base);
    }
    loop {
        if let Some(&v0) = s.members().iter().find(|v| table.unrealized[v].is_empty()) {
            return Ok((v0, table));
        }
        let arcs: Vec<(Vertex, Vertex)> =
            s.members().iter().map(|&v| (v, *table.unrealized[&v].first().expect("nonempty"))).collect();
        let j = RbDigraph::from_arcs(h.pairs(), arcs);
        let second = second_pm_transversal(family, base, s, &j)?;
        table.iterations += 1;
        let mut progress = false;
        for &(e, _) in second.pairs() {
            let (a, b) = e.endpoints();
            let (v, w) = if s.contains(a) { (a, b) } else { (b, a) };
            progress |= table.record(v, w, &second);
        }
        if !progress {
            return Err(MultiplierError::NoProgress);
        }
    }
}

fn dedup_sorted(mut v: Vec<Transversal>) -> Vec<Transversal> {
    v.sort();
    v.dedup();
    v
}

/// At least `(d+1)!` distinct Hamiltonian transversals, `d = d*(S)`, all in `Ω(C, φ, S)`.
pub fn many_ham_transversals(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
) -> Result<Vec<Transversal>, MultiplierError> {
    many_ham_transversals_with(family, base, s, Exec::default())
}

pub fn many_ham_transversals_with(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    exec: Exec,
) -> Result<Vec<Transversal>, MultiplierError> {
    check_cycle_base(family, base, s)?;
    let h = build_full_ryb(family, base)?;
    let d = if s.is_empty() { 0 } else { h.d_star(s)? };
    if d == 0 {
        return Err(MultiplierError::DStarTooSmall(d));
    }
    many_ham_rec(family, base, s, d, exec)
}

fn many_ham_rec(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    target: usize,
    exec: Exec,
) -> Result<Vec<Transversal>, MultiplierError> {
    if target == 0 {
        return Ok(vec![base.clone()]);
    }
    let n = family.num_vertices();
    let h = build_full_ryb(family, base)?;
    let d = h.d_star(s)?;
    if d < target {
        return Err(MultiplierError::InvariantViolated(format!("d* = {d} below the required {target}")));
    }
    if target == 1 {
        let second = second_ham_transversal(family, base, s, &h)?;
        return Ok(dedup_sorted(vec![base.clone(), second]));
    }
    let (v0, table) = find_saturated_vertex_ham(family, base, s, &h)?;
    let branches: Vec<(Vertex, Transversal)> = table.edges_at(v0).into_iter().map(|(t, w)| (t, w.clone())).collect();
    if branches.len() < target + 1 {
        return Err(MultiplierError::InvariantViolated(format!(
            "{} edges from {v0} into S, need {}",
            branches.len(),
            target + 1
        )));
    }
    let results = exec.map(branches, |(s1, witness)| -> Result<Vec<Transversal>, MultiplierError> {
        let (f2, c2, idx) = naturally_index(family, &witness)?;
        let rest: Vec<Vertex> = s.members().iter().copied().filter(|&m| m != s1).collect();
        let s2 = CandidateSet::new(n, idx.map_vertices(&rest))?;
        let sub = many_ham_rec(&f2, &c2, &s2, target - 1, exec)?;
        let back = idx.inverse();
        Ok(sub.iter().map(|t| back.apply_transversal(t)).collect())
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(dedup_sorted(out))
}

/// Removes vertices `a`, `b` and color `c`, compacting ids in order.
///
/// Returns the reduced family and transversal plus the old id of every new vertex and color.
fn delete_pair(
    family: &SubgraphFamily,
    t: &Transversal,
    a: Vertex,
    b: Vertex,
    c: Color,
) -> (SubgraphFamily, Transversal, Vec<Vertex>, Vec<Color>) {
    let total = family.num_vertices();
    let old_vertices: Vec<Vertex> = (0..total).filter(|&v| v != a && v != b).collect();
    let mut new_of_old = vec![usize::MAX; total];
    for (k, &v) in old_vertices.iter().enumerate() {
        new_of_old[v] = k;
    }
    let old_colors: Vec<Color> = (0..family.num_subgraphs()).filter(|&k| k != c).collect();
    let mut color_new_of_old = vec![usize::MAX; family.num_subgraphs()];
    for (k, &col) in old_colors.iter().enumerate() {
        color_new_of_old[col] = k;
    }
    let restrict = |g: &SimpleGraph| {
        SimpleGraph::from_edges(
            old_vertices.len(),
            g.edges().filter(|e| !e.contains(a) && !e.contains(b)).map(|e| {
                let (u, v) = e.endpoints();
                (new_of_old[u], new_of_old[v])
            }),
        )
        .expect("restriction of a simple graph")
    };
    let base = restrict(family.base());
    let subgraphs = old_colors.iter().map(|&col| std::sync::Arc::new(restrict(family.subgraph(col)))).collect();
    let reduced = SubgraphFamily::new(base, subgraphs, family.kind());
    let pairs = t
        .pairs()
        .iter()
        .filter(|(e, _)| !e.contains(a))
        .map(|&(e, col)| {
            let (u, v) = e.endpoints();
            (Edge::new(new_of_old[u], new_of_old[v]), color_new_of_old[col])
        })
        .collect();
    (reduced, Transversal::new(t.kind(), pairs), old_vertices, old_colors)
}

/// At least `(d+1)!` distinct perfect matching transversals, `d = d×(S)`, all in `Ω(M, φ, S)`.
pub fn many_pm_transversals(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
) -> Result<Vec<Transversal>, MultiplierError> {
    many_pm_transversals_with(family, base, s, Exec::default())
}

pub fn many_pm_transversals_with(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    exec: Exec,
) -> Result<Vec<Transversal>, MultiplierError> {
    check_matching_base(family, base, s)?;
    let h = build_full_rb(family, base)?;
    let d = h.d_cross(s)?;
    if d == 0 && h.pairs() > 1 {
        return Err(MultiplierError::DStarTooSmall(0));
    }
    many_pm_rec(family, base, s, d, exec)
}

fn many_pm_rec(
    family: &SubgraphFamily,
    base: &Transversal,
    s: &CandidateSet,
    target: usize,
    exec: Exec,
) -> Result<Vec<Transversal>, MultiplierError> {
    let n = family.num_vertices() / 2;
    if target == 0 || n == 1 {
        return Ok(vec![base.clone()]);
    }
    let h = build_full_rb(family, base)?;
    let d = h.d_cross(s)?;
    if d < target {
        return Err(MultiplierError::InvariantViolated(format!("d× = {d} below the required {target}")));
    }
    let (v0, table) = find_saturated_vertex_pm(family, base, s, &h)?;
    let c = h.pair_of(v0);
    let branches: Vec<(Vertex, Transversal)> = table.edges_at(v0).into_iter().map(|(w, t)| (w, t.clone())).collect();
    if branches.len() < target + 1 {
        return Err(MultiplierError::InvariantViolated(format!(
            "{} edges leave S at {v0}, need {}",
            branches.len(),
            target + 1
        )));
    }
    let results = exec.map(branches, |(w, witness)| -> Result<Vec<Transversal>, MultiplierError> {
        let (reduced, t_r, old_vertices, old_colors) = delete_pair(family, &witness, v0, w, c);
        let (f2, t2, idx) = naturally_index(&reduced, &t_r)?;
        let rest: Vec<Vertex> =
            old_vertices.iter().enumerate().filter(|&(_, &v)| s.contains(v)).map(|(k, _)| idx.vertex_perm[k]).collect();
        let s2 = CandidateSet::new(f2.num_vertices(), rest)?;
        let sub = many_pm_rec(&f2, &t2, &s2, target - 1, exec)?;
        let back = idx.inverse();
        Ok(sub
            .iter()
            .map(|t| {
                let lifted = back.apply_transversal(t).relabel(&old_vertices, &old_colors);
                let mut pairs = lifted.pairs().to_vec();
                pairs.push((Edge::new(v0, w), c));
                Transversal::new(TransversalKind::Matching, pairs)
            })
            .collect())
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(dedup_sorted(out))
}
