use rand::Rng as _;

use crate::digraph::{CandidateSet, RybDigraph};
use crate::rng::stream;

use super::{dirac_threshold, EventKind, Location, ResampleRecord, SampleOutcome, SamplerConfig, SamplerError};

/// Red-independent `S` for a Dirac family, by draw-and-thin with rejection.
///
/// Each vertex joins with probability `p = c/8`; then both ends of every red
/// pair inside `S` are removed. A draw is accepted once
/// `d*(S) ≥ max(1, ⌈c²n/16 − (15c²/8)·√(n ln n)⌉)`.
pub fn sample_set_dirac(h: &RybDigraph, cfg: &SamplerConfig) -> Result<SampleOutcome, SamplerError> {
    let n = h.n();
    if !(0.5..=1.0).contains(&cfg.c) {
        return Err(SamplerError::Domain(format!("c = {} outside [1/2, 1]", cfg.c)));
    }
    let p = cfg.dirac_p();
    if !(p > 0.0 && p < 1.0) {
        return Err(SamplerError::Domain(format!("p = {p} outside (0, 1)")));
    }
    let min_out = h.min_yellow_out_degree().min(h.min_blue_out_degree());
    let needed_out = cfg.c * n as f64 - 2.0;
    if (min_out as f64) < needed_out {
        return Err(SamplerError::Precondition(format!(
            "minimum yellow/blue out-degree {min_out} is below cn − 2 = {needed_out:.2}"
        )));
    }
    let bound = dirac_threshold(n, cfg.c);
    let required = (bound.ceil().max(1.0)) as usize;
    let mut warnings = Vec::new();
    if bound < 1.0 {
        warnings.push(format!("the lemma's bound {bound:.2} is below 1 at n = {n}; requiring d* ≥ 1"));
    }
    let mut rng = stream(cfg.seed, 0);
    let mut log = Vec::new();
    for attempt in 0..=cfg.max_resamples {
        let drawn: Vec<bool> = (0..n).map(|_| rng.random_bool(p)).collect();
        let mut keep = drawn.clone();
        for v in 0..n {
            for w in [(v + 1) % n, (v + 2) % n] {
                if w != v && drawn[v] && drawn[w] {
                    keep[v] = false;
                    keep[w] = false;
                }
            }
        }
        let set = CandidateSet::from_mask(keep);
        let d = if set.is_empty() { 0 } else { h.d_star(&set).expect("thinned set is red-independent") };
        if d >= required {
            return Ok(SampleOutcome::new(set, attempt, required, warnings, log));
        }
        if cfg.record_log {
            let location = set.members().first().map_or(Location::Pair(0), |&v| Location::Vertex(v));
            log.push(ResampleRecord {
                step: attempt + 1,
                kind: EventKind::ChernoffFail,
                location,
                redrawn: (0..n).collect(),
            });
        }
    }
    Err(SamplerError::ResampleBudgetExceeded(cfg.max_resamples))
}
