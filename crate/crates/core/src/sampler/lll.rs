use std::collections::BTreeSet;

use rand::Rng as _;

use crate::digraph::{pred, succ, CandidateSet, RbDigraph, RybDigraph};
use crate::graph::{Edge, Vertex};
use crate::rng::stream;

use super::{BadEventReport, EventKind, Location, ResampleRecord, SampleOutcome, SamplerConfig, SamplerError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum HamEvent {
    X(Edge),
    Yellow(Vertex),
    Blue(Vertex),
}

impl HamEvent {
    fn kind(self) -> EventKind {
        match self {
            HamEvent::X(_) => EventKind::XEvent,
            HamEvent::Yellow(_) => EventKind::YYellow,
            HamEvent::Blue(_) => EventKind::YBlue,
        }
    }

    fn location(self) -> Location {
        match self {
            HamEvent::X(e) => Location::Edge(e),
            HamEvent::Yellow(v) | HamEvent::Blue(v) => Location::Vertex(v),
        }
    }
}

fn reverse(n: usize, lists: impl Fn(Vertex) -> Vec<Vertex>) -> Vec<Vec<Vertex>> {
    let mut rev = vec![Vec::new(); n];
    for v in 0..n {
        for u in lists(v) {
            rev[u].push(v);
        }
    }
    rev
}

/// Red neighbors of `v`: cycle distance 1 or 2.
fn red_neighbors(v: Vertex, n: usize) -> Vec<Vertex> {
    let mut out = vec![pred(v, n), succ(v, n), pred(pred(v, n), n), succ(succ(v, n), n)];
    out.retain(|&w| w != v);
    out.sort_unstable();
    out.dedup();
    out
}

struct HamState<'a> {
    h: &'a RybDigraph,
    n: usize,
    tau: f64,
    inside: Vec<bool>,
    yellow_count: Vec<usize>,
    blue_count: Vec<usize>,
    rev_yellow: Vec<Vec<Vertex>>,
    rev_blue: Vec<Vec<Vertex>>,
    flagged: BTreeSet<HamEvent>,
}

impl HamState<'_> {
    fn is_bad(&self, ev: HamEvent) -> bool {
        match ev {
            HamEvent::X(e) => {
                let (a, b) = e.endpoints();
                self.inside[a] && self.inside[b]
            }
            HamEvent::Yellow(v) => (self.yellow_count[v] as f64) < self.tau,
            HamEvent::Blue(v) => (self.blue_count[v] as f64) < self.tau,
        }
    }

    fn refresh(&mut self, ev: HamEvent) {
        if self.is_bad(ev) {
            self.flagged.insert(ev);
        } else {
            self.flagged.remove(&ev);
        }
    }

    fn set(&mut self, u: Vertex, value: bool) {
        if self.inside[u] == value {
            return;
        }
        self.inside[u] = value;
        for k in 0..self.rev_yellow[u].len() {
            let v = self.rev_yellow[u][k];
            if value {
                self.yellow_count[v] += 1;
            } else {
                self.yellow_count[v] -= 1;
            }
            self.refresh(HamEvent::Yellow(v));
        }
        for k in 0..self.rev_blue[u].len() {
            let v = self.rev_blue[u][k];
            if value {
                self.blue_count[v] += 1;
            } else {
                self.blue_count[v] -= 1;
            }
            self.refresh(HamEvent::Blue(v));
        }
        for w in red_neighbors(u, self.n) {
            self.refresh(HamEvent::X(Edge::new(u, w)));
        }
    }

    fn scope(&self, ev: HamEvent) -> Vec<Vertex> {
        match ev {
            HamEvent::X(e) => {
                let (a, b) = e.endpoints();
                vec![a, b]
            }
            HamEvent::Yellow(v) => self.h.yellow(v).to_vec(),
            HamEvent::Blue(v) => self.h.blue(v).to_vec(),
        }
    }
}

/// All x- and y-events of a vertex set against threshold `p·r/400`, flagged or not.
pub fn ham_events(h: &RybDigraph, set: &CandidateSet, p: f64, r: usize) -> Vec<BadEventReport> {
    let n = h.n();
    let tau = p * r as f64 / 400.0;
    let mut out = Vec::new();
    for e in h.red_edges() {
        let (a, b) = e.endpoints();
        let both = usize::from(set.contains(a) && set.contains(b));
        // observed = number of endpoints outside S; flagged when both are inside
        out.push(BadEventReport {
            kind: EventKind::XEvent,
            location: Location::Edge(e),
            observed: 1 - both,
            threshold: 1.0,
        });
    }
    for v in 0..n {
        let y = h.yellow(v).iter().filter(|&&w| set.contains(w)).count();
        let b = h.blue(v).iter().filter(|&&w| set.contains(w)).count();
        out.push(BadEventReport {
            kind: EventKind::YYellow,
            location: Location::Vertex(v),
            observed: y,
            threshold: tau,
        });
        out.push(BadEventReport { kind: EventKind::YBlue, location: Location::Vertex(v), observed: b, threshold: tau });
    }
    out
}

/// Red-independent `S` with `|yellow(v) ∩ S|, |blue(v) ∩ S| ≥ p·r/400` at every vertex.
///
/// Each vertex joins `S` with probability `p`; while some x-event (both ends of a
/// red edge in `S`) or y-event (too few out-neighbors in `S`) holds, the one with
/// the smallest location has its variables redrawn.
pub fn sample_set_lll_ham(h: &RybDigraph, cfg: &SamplerConfig) -> Result<SampleOutcome, SamplerError> {
    let n = h.n();
    if cfg.r == 0 {
        return Err(SamplerError::Precondition("r must be positive".into()));
    }
    let min_out = h.min_yellow_out_degree().min(h.min_blue_out_degree());
    if min_out < cfg.r {
        return Err(SamplerError::Precondition(format!(
            "minimum yellow/blue out-degree {min_out} is below r = {}",
            cfg.r
        )));
    }
    if cfg.m < 2 {
        return Err(SamplerError::Domain(format!("m = {} must be at least 2", cfg.m)));
    }
    let p = cfg.ham_p();
    if !(p > 0.0 && p < 1.0) {
        return Err(SamplerError::Domain(format!("p = {p} outside (0, 1)")));
    }
    let mut warnings = Vec::new();
    let mf = cfg.m as f64;
    if cfg.m < 262 {
        warnings.push(format!("m = {} is below 262", cfg.m));
    }
    let r_needed = 7.0 * (mf * mf.ln()).sqrt() + 2.0;
    if (cfg.r as f64) < r_needed {
        warnings.push(format!("r = {} is below 7·√(m ln m) + 2 = {r_needed:.2}", cfg.r));
    }
    let tau = p * cfg.r as f64 / 400.0;

    let mut rng = stream(cfg.seed, 0);
    let mut state = HamState {
        h,
        n,
        tau,
        inside: vec![false; n],
        yellow_count: vec![0; n],
        blue_count: vec![0; n],
        rev_yellow: reverse(n, |v| h.yellow(v).to_vec()),
        rev_blue: reverse(n, |v| h.blue(v).to_vec()),
        flagged: BTreeSet::new(),
    };
    for v in 0..n {
        state.refresh(HamEvent::Yellow(v));
        state.refresh(HamEvent::Blue(v));
    }
    for v in 0..n {
        let draw = rng.random_bool(p);
        state.set(v, draw);
    }
    let mut log = Vec::new();
    let mut steps = 0;
    while let Some(&ev) = state.flagged.first() {
        if steps >= cfg.max_resamples {
            return Err(SamplerError::ResampleBudgetExceeded(cfg.max_resamples));
        }
        steps += 1;
        let scope = state.scope(ev);
        for &v in &scope {
            let draw = rng.random_bool(p);
            state.set(v, draw);
        }
        if cfg.record_log {
            log.push(ResampleRecord { step: steps, kind: ev.kind(), location: ev.location(), redrawn: scope });
        }
    }
    let set = CandidateSet::from_mask(state.inside);
    Ok(SampleOutcome::new(set, steps, tau.ceil() as usize, warnings, log))
}

struct PmState<'a> {
    h: &'a RbDigraph,
    n: usize,
    tau: f64,
    /// `true`: `y_i ∈ S`; `false`: `x_i ∈ S`.
    bit: Vec<bool>,
    escape: Vec<usize>,
    rev: Vec<Vec<Vertex>>,
    flagged: BTreeSet<usize>,
}

impl PmState<'_> {
    fn chosen(&self, i: usize) -> Vertex {
        if self.bit[i] {
            self.n + i
        } else {
            i
        }
    }

    fn refresh(&mut self, i: usize) {
        if (self.escape[self.chosen(i)] as f64) < self.tau {
            self.flagged.insert(i);
        } else {
            self.flagged.remove(&i);
        }
    }

    fn set(&mut self, i: usize, value: bool) {
        if self.bit[i] == value {
            return;
        }
        let leaving = self.chosen(i);
        self.bit[i] = value;
        let entering = self.chosen(i);
        let mut touched = vec![i];
        for k in 0..self.rev[leaving].len() {
            let v = self.rev[leaving][k];
            self.escape[v] += 1;
            touched.push(self.h.pair_of(v));
        }
        for k in 0..self.rev[entering].len() {
            let v = self.rev[entering][k];
            self.escape[v] -= 1;
            touched.push(self.h.pair_of(v));
        }
        touched.sort_unstable();
        touched.dedup();
        for j in touched {
            self.refresh(j);
        }
    }
}

/// Maximal red-independent `S` with `|blue(z) \ S| ≥ α·r/2` for every member `z`.
///
/// One endpoint per pair, uniformly; while some pair's event `B_i` holds, the
/// lowest such pair has its bit and the bits of every pair meeting
/// `blue(x_i) ∪ blue(y_i)` redrawn.
pub fn sample_set_pm(h: &RbDigraph, cfg: &SamplerConfig) -> Result<SampleOutcome, SamplerError> {
    let n = h.pairs();
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(SamplerError::Domain(format!("alpha = {} outside (0, 1)", cfg.alpha)));
    }
    if cfg.r == 0 {
        return Err(SamplerError::Precondition("r must be positive".into()));
    }
    let min_out = h.min_blue_out_degree();
    if min_out < cfg.r {
        return Err(SamplerError::Precondition(format!("minimum blue out-degree {min_out} is below r = {}", cfg.r)));
    }
    let m = if cfg.m > 0 { cfg.m } else { (0..2 * n).map(|v| h.blue(v).len() + 1).max().unwrap_or(1) };
    let mut warnings = Vec::new();
    if m >= 2 {
        let needed = super::pm_degree_threshold(cfg.alpha, m).map(|t| t - 1.0).unwrap_or(f64::INFINITY);
        if (cfg.r as f64) < needed {
            warnings.push(format!("r = {} is below 4(1 + ln(2m² − 2m + 1))/(1 − α)² = {needed:.2}", cfg.r));
        }
    }
    let tau = cfg.alpha * cfg.r as f64 / 2.0;
    let scopes: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut pairs: Vec<usize> =
                h.blue(i).iter().chain(h.blue(n + i)).map(|&v| h.pair_of(v)).chain([i]).collect();
            pairs.sort_unstable();
            pairs.dedup();
            pairs
        })
        .collect();

    let mut rng = stream(cfg.seed, 0);
    let mut state = PmState {
        h,
        n,
        tau,
        bit: vec![false; n],
        escape: (0..2 * n).map(|v| h.blue(v).len()).collect(),
        rev: reverse(2 * n, |v| h.blue(v).to_vec()),
        flagged: BTreeSet::new(),
    };
    // start from S = X, then draw every bit
    for i in 0..n {
        for k in 0..state.rev[i].len() {
            let v = state.rev[i][k];
            state.escape[v] -= 1;
        }
    }
    for i in 0..n {
        state.refresh(i);
    }
    for i in 0..n {
        let draw = rng.random_bool(0.5);
        state.set(i, draw);
    }
    let mut log = Vec::new();
    let mut steps = 0;
    while let Some(&i) = state.flagged.first() {
        if steps >= cfg.max_resamples {
            return Err(SamplerError::ResampleBudgetExceeded(cfg.max_resamples));
        }
        steps += 1;
        for &j in &scopes[i] {
            let draw = rng.random_bool(0.5);
            state.set(j, draw);
        }
        if cfg.record_log {
            log.push(ResampleRecord {
                step: steps,
                kind: EventKind::BI,
                location: Location::Pair(i),
                redrawn: scopes[i].clone(),
            });
        }
    }
    let members: Vec<Vertex> = (0..n).map(|i| state.chosen(i)).collect();
    let set = CandidateSet::new(2 * n, members).expect("in range");
    Ok(SampleOutcome::new(set, steps, tau.ceil() as usize, warnings, log))
}
