//! Hamiltonian and perfect-matching transversals of graph families.
//!
//! A *transversal* of a family `G_0, ..., G_{s-1}` of subgraphs of a base
//! graph `G` is an edge set `T` with a bijective coloring `φ: T -> [s]` such
//! that every edge `e` lies in `G_{φ(e)}`. This crate builds the auxiliary
//! digraphs that certify the existence of further transversals once one is
//! known, and turns those certificates into explicit transversals:
//!
//! - [`digraph`]: RYB / RB digraphs, red-independence, local domination and
//!   the `d*` / `d×` set metrics.
//! - [`exchange`]: a second transversal from a red-independent dominating set
//!   (lollipop walk for cycles, alternating cycle for matchings).
//! - [`multiplier`]: at least `(d+1)!` transversals by recursion, plus exhaustive
//!   enumeration of the constrained spaces `Ω`.
//! - [`sampler`]: Moser–Tardos and rejection samplers for the required sets,
//!   and evaluators for the probabilistic bounds behind them.
//! - [`oracle`]: brute-force enumeration and counting, independent of the above.
//! - [`generators`]: seeded instance families.
//!
//! Heavy loops go through [`exec::Exec`], which uses rayon when the
//! `parallel` feature is enabled.

pub mod digraph;
pub mod exchange;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod multiplier;
pub mod oracle;
pub mod rng;
pub mod sampler;
pub mod transversal;
pub mod validate;

pub use digraph::{build_full_rb, build_full_ryb, CandidateSet, RbDigraph, RedStructure, RybDigraph};
pub use exec::Exec;
pub use graph::{Arc, Color, Edge, FamilyKind, SimpleGraph, SubgraphFamily, Vertex};
pub use transversal::{Transversal, TransversalKind};
pub use validate::{naturally_index, validate_family, validate_transversal, NaturalIndexing, ValidationReport};
