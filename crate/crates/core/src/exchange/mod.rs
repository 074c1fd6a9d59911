//! Second-transversal constructions.
//!
//! [`second_ham_transversal`] prunes an RYB-digraph down to one arc per
//! cycle neighbor of `S`, walks Thomason's lollipop graph of Hamiltonian
//! paths to a second cycle and recolors it. [`second_pm_transversal`] walks
//! a red/blue alternating cycle out of `S` and flips the matching along it.

mod alternating;
mod lollipop;

use thiserror::Error;

pub use alternating::{find_alternating_cycle, second_pm_transversal, second_pm_transversal_traced, AlternatingCycle};
pub use lollipop::{
    has_interleaved_form, lollipop_second_cycle, lollipop_walk, prune, recolor_ham, second_ham_transversal,
    second_ham_transversal_traced, ArcColor, LollipopTrace, PrunedDigraph, VertexCycle,
};

use crate::digraph::DigraphError;
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("transversal is not naturally indexed")]
    NotNaturallyIndexed,
    #[error("digraph is not a sub-digraph of the full auxiliary digraph")]
    NotAnAuxiliarySubdigraph,
    #[error("set is not red-independent")]
    NotRedIndependent,
    #[error("set is not a maximal red-independent set")]
    NotMaximalRedIndependent,
    #[error("set is not locally dominating")]
    NotLocallyDominating,
    #[error("lollipop walk stuck: {0}")]
    WalkStuck(String),
    #[error("recoloring conflict: {0}")]
    RecolorConflict(String),
    #[error("vertex {0} has no blue arc leaving the set")]
    NoBlueEscape(Vertex),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}
