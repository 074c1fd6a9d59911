//! Randomized construction of the sets `S`, and the probabilistic bounds behind them.
//!
//! [`sample_set_lll_ham`] and [`sample_set_pm`] run Moser–Tardos resampling
//! over explicit bad events; [`sample_set_dirac`] draws, thins and redraws.
//! All logarithms are natural. Every run reads its randomness from
//! [`crate::rng::stream`] with the configured seed, so identical inputs give
//! identical sets and identical resample logs.

mod bounds;
mod dirac;
mod lll;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use bounds::{
    chernoff_bounds, chernoff_monte_carlo, dirac_threshold, factorial_bounds, lll_condition_ham, lll_scan_ham,
    pm_degree_threshold, pm_event_bound, pm_log_degree_form, xi, BoundParams, FactorialBound, InequalityReport,
    InequalityScan, MonteCarloReport,
};
pub use dirac::sample_set_dirac;
pub use lll::{ham_events, sample_set_lll_ham, sample_set_pm};

use crate::digraph::CandidateSet;
use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("resample budget of {0} exhausted (inconclusive)")]
    ResampleBudgetExceeded(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Parameters for one sampler run.
///
/// `p` defaults to `½·√(ln m / m)` for the Hamiltonian sampler and `c/8` for
/// the Dirac sampler; thresholds are always recomputed from these fields.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_resamples: usize,
    pub p: Option<f64>,
    pub alpha: f64,
    pub r: usize,
    pub m: usize,
    pub c: f64,
    pub epsilon: f64,
    /// Keep the per-step resample log.
    pub record_log: bool,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> SamplerConfig {
        SamplerConfig {
            seed,
            max_resamples: 1_000_000,
            p: None,
            alpha: 0.5,
            r: 0,
            m: 0,
            c: 0.5,
            epsilon: 1.0,
            record_log: false,
        }
    }

    /// Inclusion probability of the Hamiltonian LLL sampler.
    pub fn ham_p(&self) -> f64 {
        self.p.unwrap_or_else(|| {
            let m = self.m as f64;
            0.5 * (m.ln() / m).sqrt()
        })
    }

    /// Inclusion probability of the Dirac sampler.
    pub fn dirac_p(&self) -> f64 {
        self.p.unwrap_or(self.c / 8.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    XEvent,
    YYellow,
    YBlue,
    BI,
    ChernoffFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Edge(Edge),
    Vertex(Vertex),
    Pair(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Edge(e) => write!(f, "{e}"),
            Location::Vertex(v) => write!(f, "v{v}"),
            Location::Pair(i) => write!(f, "pair{i}"),
        }
    }
}

/// A bad event; flagged exactly when `observed < threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadEventReport {
    pub kind: EventKind,
    pub location: Location,
    pub observed: usize,
    pub threshold: f64,
}

impl BadEventReport {
    pub fn flagged(&self) -> bool {
        (self.observed as f64) < self.threshold
    }
}

/// One resampling step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResampleRecord {
    pub step: usize,
    pub kind: EventKind,
    pub location: Location,
    pub redrawn: Vec<usize>,
}

/// Result of a sampler run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleOutcome {
    #[serde(skip)]
    pub set: CandidateSet,
    pub members: Vec<Vertex>,
    /// Resampling steps (Moser–Tardos) or redraws (Dirac).
    pub resamples: usize,
    /// The per-member count every output is guaranteed to reach.
    pub guaranteed: usize,
    /// Hypotheses of the underlying existence statement that the input does not meet.
    pub warnings: Vec<String>,
    pub log: Vec<ResampleRecord>,
}

impl SampleOutcome {
    fn new(
        set: CandidateSet,
        resamples: usize,
        guaranteed: usize,
        warnings: Vec<String>,
        log: Vec<ResampleRecord>,
    ) -> Self {
        SampleOutcome { members: set.members().to_vec(), set, resamples, guaranteed, warnings, log }
    }
}
