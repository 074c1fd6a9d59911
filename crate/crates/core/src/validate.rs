//! Structured validation of families and transversals, and natural indexing.

use std::fmt;

use thiserror::Error;

use crate::graph::{Color, Edge, FamilyKind, SubgraphFamily, Vertex};
use crate::transversal::{Transversal, TransversalKind};

/// One invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SubgraphCount { expected: usize, found: usize },
    OddVertexCount(usize),
    SubgraphVertexCount { color: Color, found: usize },
    EdgeNotInBase { color: Color, edge: Edge },
    KindMismatch,
    WrongSize { expected: usize, found: usize },
    VertexOutOfRange(Edge),
    ColorOutOfRange { edge: Edge, color: Color },
    ColorsNotInjective { color: Color },
    EdgeNotInSubgraph { edge: Edge, color: Color },
    NotHamiltonianCycle,
    NotPerfectMatching,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SubgraphCount { expected, found } => {
                write!(f, "subgraph count {found} \u{2260} {expected}")
            }
            Violation::OddVertexCount(n) => write!(f, "matching family on odd vertex count {n}"),
            Violation::SubgraphVertexCount { color, found } => {
                write!(f, "subgraph {color} has {found} vertices")
            }
            Violation::EdgeNotInBase { color, edge } => {
                write!(f, "edge {edge} of subgraph {color} is not in the base graph")
            }
            Violation::KindMismatch => write!(f, "transversal kind does not match family kind"),
            Violation::WrongSize { expected, found } => {
                write!(f, "transversal has {found} edges, expected {expected}")
            }
            Violation::VertexOutOfRange(e) => write!(f, "edge {e} has an endpoint out of range"),
            Violation::ColorOutOfRange { edge, color } => {
                write!(f, "edge {edge} has color {color} out of range")
            }
            Violation::ColorsNotInjective { color } => {
                write!(f, "colors not injective: color {color} used more than once")
            }
            Violation::EdgeNotInSubgraph { edge, color } => {
                write!(f, "edge {edge} is not in subgraph {color}")
            }
            Violation::NotHamiltonianCycle => write!(f, "edges do not form a Hamiltonian cycle"),
            Violation::NotPerfectMatching => write!(f, "not a matching covering every vertex"),
        }
    }
}

/// Every violation found; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

pub fn validate_family(family: &SubgraphFamily) -> ValidationReport {
    let n = family.num_vertices();
    let mut violations = Vec::new();
    let expected = family.kind().expected_subgraphs(n);
    if family.kind() == FamilyKind::Matching && n % 2 == 1 {
        violations.push(Violation::OddVertexCount(n));
    }
    if family.num_subgraphs() != expected {
        violations.push(Violation::SubgraphCount { expected, found: family.num_subgraphs() });
    }
    for (color, g) in family.subgraphs().enumerate() {
        if g.num_vertices() != n {
            violations.push(Violation::SubgraphVertexCount { color, found: g.num_vertices() });
            continue;
        }
        for edge in g.edges() {
            if !family.base().contains_edge(edge) {
                violations.push(Violation::EdgeNotInBase { color, edge });
            }
        }
    }
    ValidationReport { violations }
}

/// Checks bijectivity of colors, `e ∈ G_{φ(e)}`, and the structural form.
pub fn validate_transversal(family: &SubgraphFamily, t: &Transversal) -> ValidationReport {
    let n = family.num_vertices();
    let s = family.num_subgraphs();
    let mut violations = Vec::new();
    let kind_ok = matches!(
        (family.kind(), t.kind()),
        (FamilyKind::Hamiltonian, TransversalKind::Cycle) | (FamilyKind::Matching, TransversalKind::Matching)
    );
    if !kind_ok {
        violations.push(Violation::KindMismatch);
    }
    if t.len() != s {
        violations.push(Violation::WrongSize { expected: s, found: t.len() });
    }
    let mut used = vec![false; s];
    let mut in_range = true;
    for &(edge, color) in t.pairs() {
        let (_, b) = edge.endpoints();
        if b >= n {
            violations.push(Violation::VertexOutOfRange(edge));
            in_range = false;
            continue;
        }
        if color >= s {
            violations.push(Violation::ColorOutOfRange { edge, color });
            continue;
        }
        if used[color] {
            violations.push(Violation::ColorsNotInjective { color });
        }
        used[color] = true;
        if !family.subgraph(color).contains_edge(edge) {
            violations.push(Violation::EdgeNotInSubgraph { edge, color });
        }
    }
    if in_range {
        match t.kind() {
            TransversalKind::Cycle => {
                if !is_hamiltonian_cycle(t, n) {
                    violations.push(Violation::NotHamiltonianCycle);
                }
            }
            TransversalKind::Matching => {
                if !is_perfect_matching(t, n) {
                    violations.push(Violation::NotPerfectMatching);
                }
            }
        }
    }
    ValidationReport { violations }
}

fn is_hamiltonian_cycle(t: &Transversal, n: usize) -> bool {
    if n < 3 || t.len() != n {
        return false;
    }
    let Some((first, _)) = t.pairs().first() else { return false };
    let (a, b) = first.endpoints();
    t.cycle_order_from(n, a, b).is_some()
}

fn is_perfect_matching(t: &Transversal, n: usize) -> bool {
    let mut covered = vec![false; n];
    for e in t.edges() {
        let (a, b) = e.endpoints();
        if covered[a] || covered[b] {
            return false;
        }
        covered[a] = true;
        covered[b] = true;
    }
    covered.iter().all(|&c| c)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexingError {
    #[error("invalid transversal: {0:?}")]
    InvalidTransversal(Vec<String>),
}

/// Relabeling that puts a transversal into canonical form.
///
/// `vertex_perm[old] = new` and `color_perm[old] = new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalIndexing {
    pub vertex_perm: Vec<Vertex>,
    pub color_perm: Vec<Color>,
}

impl NaturalIndexing {
    pub fn identity(n: usize, s: usize) -> NaturalIndexing {
        NaturalIndexing { vertex_perm: (0..n).collect(), color_perm: (0..s).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &v)| i == v)
            && self.color_perm.iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn inverse(&self) -> NaturalIndexing {
        NaturalIndexing { vertex_perm: invert(&self.vertex_perm), color_perm: invert(&self.color_perm) }
    }

    pub fn apply_family(&self, family: &SubgraphFamily) -> SubgraphFamily {
        family.relabel(&self.vertex_perm, &invert(&self.color_perm))
    }

    pub fn apply_transversal(&self, t: &Transversal) -> Transversal {
        t.relabel(&self.vertex_perm, &self.color_perm)
    }

    pub fn map_vertices(&self, vs: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = vs.iter().map(|&v| self.vertex_perm[v]).collect();
        out.sort_unstable();
        out
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// True if `t` is already the canonical cycle or matching for `n` vertices.
pub fn is_naturally_indexed(t: &Transversal, n: usize) -> bool {
    match t.kind() {
        TransversalKind::Cycle => n >= 3 && *t == Transversal::canonical_cycle(n),
        TransversalKind::Matching => n.is_multiple_of(2) && *t == Transversal::canonical_matching(n / 2),
    }
}

/// Relabels `(family, t)` so that `t` becomes canonical.
///
/// Cycles start at the smaller endpoint of the color-0 edge and walk towards
/// the larger one; vertex `k` of the walk becomes `k` and the color of edge
/// `(k, k+1)` becomes `k`. Matchings send the pair colored `k` to `(k, n+k)`
/// with its smaller endpoint first and keep colors.
pub fn naturally_index(
    family: &SubgraphFamily,
    t: &Transversal,
) -> Result<(SubgraphFamily, Transversal, NaturalIndexing), IndexingError> {
    let report = validate_transversal(family, t);
    if !report.is_valid() {
        return Err(IndexingError::InvalidTransversal(report.messages()));
    }
    let n = family.num_vertices();
    let s = family.num_subgraphs();
    let mut vertex_perm = vec![0; n];
    let mut color_perm = vec![0; s];
    match t.kind() {
        TransversalKind::Cycle => {
            let &(e0, _) = t.pairs().iter().find(|&&(_, c)| c == 0).expect("bijective colors");
            let (a, b) = e0.endpoints();
            let order = t.cycle_order_from(n, a, b).expect("validated cycle");
            for (k, &v) in order.iter().enumerate() {
                vertex_perm[v] = k;
                let e = Edge::new(v, order[(k + 1) % n]);
                color_perm[t.color_of(e).expect("cycle edge")] = k;
            }
        }
        TransversalKind::Matching => {
            let half = n / 2;
            for &(e, c) in t.pairs() {
                let (a, b) = e.endpoints();
                vertex_perm[a] = c;
                vertex_perm[b] = half + c;
                color_perm[c] = c;
            }
        }
    }
    let indexing = NaturalIndexing { vertex_perm, color_perm };
    let family2 = indexing.apply_family(family);
    let t2 = indexing.apply_transversal(t);
    debug_assert!(is_naturally_indexed(&t2, n));
    Ok((family2, t2, indexing))
}
