use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;

use transversals::digraph::{omega_member_ham, omega_member_pm};
use transversals::exchange::{find_alternating_cycle, second_ham_transversal, second_pm_transversal};
use transversals::generators::{
    gen_dirac_family, gen_planted_dirac_family, gen_planted_ham_family, gen_planted_pm_family, gen_regular_all_equal,
    gen_regular_bipartite_all_equal, gen_witness_instance_ham, gen_witness_instance_pm, random_spread_set,
};
use transversals::multiplier::{
    enumerate_omega_ham, enumerate_omega_pm, many_ham_transversals, many_ham_transversals_with, many_pm_transversals,
    many_pm_transversals_with,
};
use transversals::oracle::{
    count_ham_transversals, count_pm_transversals, enumerate_all_ham_transversals_with, enumerate_all_pm_transversals,
    enumerate_all_pm_transversals_with, SearchBudget,
};
use transversals::rng::stream;
use transversals::sampler::{
    chernoff_monte_carlo, factorial_bounds, lll_condition_ham, lll_scan_ham, pm_degree_threshold, sample_set_dirac,
    sample_set_lll_ham, sample_set_pm, BoundParams, SamplerConfig,
};
use transversals::{
    build_full_rb, build_full_ryb, naturally_index, validate_transversal, CandidateSet, Edge, Exec, FamilyKind,
    RbDigraph, RybDigraph, SimpleGraph, SubgraphFamily, Transversal, Vertex,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

// ---------------------------------------------------------------------------

fn ac1_lll_constants() -> Outcome {
    let at262 = lll_condition_ham(262).map_err(|e| e.to_string())?;
    ensure!(at262.first_holds, "first inequality margin at m = 262 is {}", at262.first_margin);
    let below = lll_condition_ham(261).map_err(|e| e.to_string())?;
    let at194 = lll_condition_ham(194).map_err(|e| e.to_string())?;
    ensure!(at194.second_holds, "second inequality fails at m = 194 (margin {})", at194.second_margin);
    let scan = lll_scan_ham(3, 5000).map_err(|e| e.to_string())?;
    let first = scan.first_min_passing.ok_or("first inequality never holds for good")?;
    let second = scan.second_min_passing.ok_or("second inequality never holds for good")?;
    ensure!(first <= 262, "first inequality minimal passing m = {first} > 262");
    ensure!(second <= 194, "second inequality minimal passing m = {second} > 194");
    Ok(format!(
        "first margin(262) = {:.3e}, margin(261) = {:.3e}; minimal passing m over [3, 5000]: first {first} \
         ({} sign changes), second {second} ({} sign changes)",
        at262.first_margin, below.first_margin, scan.first_sign_changes, scan.second_sign_changes
    ))
}

// ---------------------------------------------------------------------------

/// Keeps a random nonempty subset of each boundary vertex's arcs into `S`; drops the rest.
fn random_sub_ryb(h: &RybDigraph, s: &CandidateSet, rng: &mut impl Rng) -> RybDigraph {
    let n = h.n();
    let mut keep = |arcs: &[Vertex]| -> Vec<Vertex> {
        let into: Vec<Vertex> = arcs.iter().copied().filter(|&t| s.contains(t)).collect();
        if into.is_empty() {
            return Vec::new();
        }
        let mut kept: Vec<Vertex> = into.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if kept.is_empty() {
            kept.push(into[rng.random_range(0..into.len())]);
        }
        kept
    };
    let yellow: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|v| keep(h.yellow(v)).into_iter().map(move |t| (v, t))).collect();
    let blue: Vec<(Vertex, Vertex)> = (0..n).flat_map(|v| keep(h.blue(v)).into_iter().map(move |t| (v, t))).collect();
    RybDigraph::from_arcs(n, yellow, blue)
}

fn underlying_edges(j: &RybDigraph) -> BTreeSet<Edge> {
    let n = j.n();
    let mut edges: BTreeSet<Edge> = j.red_edges().into_iter().collect();
    for v in 0..n {
        for &t in j.yellow(v).iter().chain(j.blue(v)) {
            edges.insert(Edge::new(v, t));
        }
    }
    edges
}

fn ac2_second_ham() -> Outcome {
    let mut instances = 0;
    let mut seed = 0u64;
    while instances < 1000 {
        seed += 1;
        let mut rng = stream(seed, 7);
        let n = rng.random_range(6..=15);
        let size = rng.random_range(2..=n / 3);
        let Some(members) = random_spread_set(n, size, seed) else { continue };
        let (f, base) = gen_witness_instance_ham(n, &members, 1, seed).map_err(|e| e.to_string())?;
        let s = CandidateSet::new(n, members.iter().copied()).map_err(|e| e.to_string())?;
        let h = build_full_ryb(&f, &base).map_err(|e| e.to_string())?;
        let j = if seed.is_multiple_of(2) { h.clone() } else { random_sub_ryb(&h, &s, &mut rng) };
        let t = second_ham_transversal(&f, &base, &s, &j).map_err(|e| format!("seed {seed}: {e}"))?;
        let report = validate_transversal(&f, &t);
        ensure!(report.is_valid(), "seed {seed}: invalid output {:?}", report.messages());
        ensure!(t != base, "seed {seed}: output equals the base");
        let under = underlying_edges(&j);
        for e in t.edges() {
            ensure!(under.contains(&e), "seed {seed}: edge {e} not in underlying(J)");
            ensure!(f.base().contains_edge(e), "seed {seed}: edge {e} not in G");
        }
        ensure!(omega_member_ham(&base, &s, &t), "seed {seed}: output not in Omega");
        instances += 1;
    }
    Ok(format!("{instances} instances (n in [6, 15]), zero failures"))
}

// ---------------------------------------------------------------------------

fn d_star_of(f: &SubgraphFamily, t: &Transversal, members: &[Vertex]) -> Result<usize, String> {
    let (f2, t2, idx) = naturally_index(f, t).map_err(|e| e.to_string())?;
    let s2 = CandidateSet::new(f.num_vertices(), idx.map_vertices(members)).map_err(|e| e.to_string())?;
    build_full_ryb(&f2, &t2).map_err(|e| e.to_string())?.d_star(&s2).map_err(|e| e.to_string())
}

fn ac3_d_star_invariance() -> Outcome {
    let mut instances = 0;
    let mut members_checked = 0;
    let mut nonzero = 0;
    let mut seed = 10_000u64;
    while instances < 200 {
        seed += 1;
        let mut rng = stream(seed, 3);
        let n = rng.random_range(6..=10);
        let size = rng.random_range(1..=(n / 3).min(3));
        let Some(members) = random_spread_set(n, size, seed) else { continue };
        let (f, base) = if size >= 2 && seed.is_multiple_of(2) {
            let d = rng.random_range(1..=(size - 1).min(2));
            gen_witness_instance_ham(n, &members, d, seed)
        } else {
            gen_planted_ham_family(n, rng.random_range(1..=4), seed)
        }
        .map_err(|e| e.to_string())?;
        let s = CandidateSet::new(n, members.iter().copied()).map_err(|e| e.to_string())?;
        let d0 = build_full_ryb(&f, &base).map_err(|e| e.to_string())?.d_star(&s).map_err(|e| e.to_string())?;
        let omega = enumerate_omega_ham(&f, &base, &s).map_err(|e| e.to_string())?;
        for c in &omega {
            let d = d_star_of(&f, c, &members)?;
            ensure!(d == d0, "seed {seed}: d* = {d} on an Omega member, {d0} on the base");
        }
        members_checked += omega.len();
        nonzero += usize::from(d0 > 0);
        instances += 1;
    }
    Ok(format!("{instances} instances ({nonzero} with d* > 0), {members_checked} Omega members, all equal"))
}

// ---------------------------------------------------------------------------

fn ac4_many_ham() -> Outcome {
    let mut summary = Vec::new();
    for d in [1usize, 2] {
        let (lo, hi) = if d == 1 { (6, 12) } else { (9, 15) };
        let mut instances = 0;
        let mut oracle_checked = 0;
        let mut min_many = usize::MAX;
        let mut seed = 20_000 * d as u64;
        while instances < 100 {
            seed += 1;
            let mut rng = stream(seed, 4);
            let n = rng.random_range(lo..=hi);
            let size = rng.random_range(d + 1..=(n / 3).min(d + 3));
            let Some(members) = random_spread_set(n, size, seed) else { continue };
            let (f, base) = gen_witness_instance_ham(n, &members, d, seed).map_err(|e| e.to_string())?;
            let s = CandidateSet::new(n, members.iter().copied()).map_err(|e| e.to_string())?;
            let many = many_ham_transversals(&f, &base, &s).map_err(|e| format!("seed {seed}: {e}"))?;
            let distinct: BTreeSet<&Transversal> = many.iter().collect();
            ensure!(distinct.len() == many.len(), "seed {seed}: duplicate outputs");
            ensure!(many.len() >= factorial(d + 1), "seed {seed}: only {} transversals for d = {d}", many.len());
            for t in &many {
                ensure!(validate_transversal(&f, t).is_valid(), "seed {seed}: invalid output");
            }
            let omega = enumerate_omega_ham(&f, &base, &s).map_err(|e| e.to_string())?;
            ensure!(omega.len() >= factorial(d + 1), "seed {seed}: |Omega| = {}", omega.len());
            let omega_set: BTreeSet<&Transversal> = omega.iter().collect();
            ensure!(many.iter().all(|t| omega_set.contains(t)), "seed {seed}: output outside Omega");
            if n <= 10 {
                let all = enumerate_all_ham_transversals_with(&f, SearchBudget::default(), Exec::Parallel)
                    .map_err(|e| e.to_string())?;
                ensure!(many.iter().all(|t| all.binary_search(t).is_ok()), "seed {seed}: oracle misses an output");
                oracle_checked += 1;
            }
            min_many = min_many.min(many.len());
            instances += 1;
        }
        summary.push(format!("d = {d}: {instances} instances, min output {min_many}, {oracle_checked} oracle-checked"));
    }
    Ok(summary.join("; "))
}

// ---------------------------------------------------------------------------

/// Keeps a random nonempty subset of each `S`-vertex's blue arcs out of `S`.
fn random_sub_rb(h: &RbDigraph, s: &CandidateSet, rng: &mut impl Rng) -> RbDigraph {
    let mut arcs = Vec::new();
    for &v in s.members() {
        let out: Vec<Vertex> = h.blue(v).iter().copied().filter(|&w| !s.contains(w)).collect();
        let mut kept: Vec<Vertex> = out.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if kept.is_empty() && !out.is_empty() {
            kept.push(out[rng.random_range(0..out.len())]);
        }
        arcs.extend(kept.into_iter().map(|w| (v, w)));
    }
    RbDigraph::from_arcs(h.pairs(), arcs)
}

fn random_pm_set(n: usize, rng: &mut impl Rng) -> Vec<Vertex> {
    (0..n).map(|i| if rng.random_bool(0.5) { i } else { n + i }).collect()
}

fn ac5_second_pm() -> Outcome {
    let mut instances = 0;
    let mut skipped = 0;
    let mut seed = 30_000u64;
    while instances < 1000 {
        seed += 1;
        let mut rng = stream(seed, 5);
        let n = rng.random_range(2..=20);
        let extra = rng.random_range(1..=2 * (n - 1));
        let (f, base) = gen_planted_pm_family(n, extra, seed).map_err(|e| e.to_string())?;
        let members = random_pm_set(n, &mut rng);
        let s = CandidateSet::new(2 * n, members.iter().copied()).map_err(|e| e.to_string())?;
        let h = build_full_rb(&f, &base).map_err(|e| e.to_string())?;
        if h.d_cross(&s).map_err(|e| e.to_string())? == 0 {
            skipped += 1;
            continue;
        }
        let j = if seed.is_multiple_of(2) { h.clone() } else { random_sub_rb(&h, &s, &mut rng) };
        let cycle = find_alternating_cycle(&j, &s).map_err(|e| format!("seed {seed}: {e}"))?;
        let steps = cycle.blue_arcs();
        ensure!(!steps.is_empty() && cycle.len() == 2 * steps.len(), "seed {seed}: malformed cycle");
        let pairs: BTreeSet<usize> = steps.iter().map(|a| j.pair_of(a.tail)).collect();
        ensure!(pairs.len() == steps.len(), "seed {seed}: cycle repeats a red edge");
        for (k, a) in steps.iter().enumerate() {
            let next = steps[(k + 1) % steps.len()];
            ensure!(s.contains(a.tail) && !s.contains(a.head), "seed {seed}: blue arc {a:?} does not leave S");
            ensure!(j.blue(a.tail).contains(&a.head), "seed {seed}: arc {a:?} not in J");
            ensure!(j.partner(next.tail) == a.head, "seed {seed}: red step broken after {a:?}");
        }
        let t = second_pm_transversal(&f, &base, &s, &j).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(validate_transversal(&f, &t).is_valid(), "seed {seed}: invalid output");
        ensure!(t != base, "seed {seed}: output equals the base");
        ensure!(omega_member_pm(&base, &s, &t), "seed {seed}: output not in Omega");
        instances += 1;
    }
    Ok(format!("{instances} instances (n in [2, 20]), {skipped} draws skipped for d_cross = 0, zero failures"))
}

// ---------------------------------------------------------------------------

/// Ryser's formula.
fn permanent(a: &[Vec<bool>]) -> i128 {
    let n = a.len();
    let mut total: i128 = 0;
    for cols in 1u32..(1 << n) {
        let prod: i128 = a.iter().map(|row| (0..n).filter(|&j| cols >> j & 1 == 1 && row[j]).count() as i128).product();
        let sign = if (n - cols.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * prod;
    }
    total
}

fn d_cross_of(f: &SubgraphFamily, t: &Transversal, members: &[Vertex]) -> Result<usize, String> {
    let (f2, t2, idx) = naturally_index(f, t).map_err(|e| e.to_string())?;
    let s2 = CandidateSet::new(f.num_vertices(), idx.map_vertices(members)).map_err(|e| e.to_string())?;
    build_full_rb(&f2, &t2).map_err(|e| e.to_string())?.d_cross(&s2).map_err(|e| e.to_string())
}

fn ac6_d_cross_invariance() -> Outcome {
    let mut instances = 0;
    let mut members_checked = 0;
    let mut seed = 40_000u64;
    while instances < 200 {
        seed += 1;
        let mut rng = stream(seed, 6);
        let n = rng.random_range(1..=8);
        let (f, base, members) = if seed.is_multiple_of(3) && n >= 2 {
            let d = rng.random_range(1..n.min(4));
            let (f, t) = gen_witness_instance_pm(n, d, seed).map_err(|e| e.to_string())?;
            (f, t, (0..n).collect::<Vec<_>>())
        } else {
            let extra = rng.random_range(0..=(2 * n.saturating_sub(1)).min(4));
            let (f, t) = gen_planted_pm_family(n, extra, seed).map_err(|e| e.to_string())?;
            (f, t, random_pm_set(n, &mut rng))
        };
        let s = CandidateSet::new(2 * n, members.iter().copied()).map_err(|e| e.to_string())?;
        let d0 = build_full_rb(&f, &base).map_err(|e| e.to_string())?.d_cross(&s).map_err(|e| e.to_string())?;
        let omega = enumerate_omega_pm(&f, &base, &s).map_err(|e| e.to_string())?;
        for m in &omega {
            let d = d_cross_of(&f, m, &members)?;
            ensure!(d == d0, "seed {seed}: d_cross = {d} on an Omega member, {d0} on the base");
        }
        // rows: pair c via its S-vertex; columns: vertices outside S
        let outside: Vec<Vertex> = (0..2 * n).filter(|&v| !s.contains(v)).collect();
        let matrix: Vec<Vec<bool>> = (0..n)
            .map(|c| {
                let sv = if s.contains(c) { c } else { n + c };
                outside.iter().map(|&w| f.subgraph(c).has_edge(sv, w)).collect()
            })
            .collect();
        let perm = permanent(&matrix);
        ensure!(perm == omega.len() as i128, "seed {seed}: |Omega| = {}, permanent = {perm}", omega.len());
        members_checked += omega.len();
        instances += 1;
    }
    Ok(format!("{instances} instances (n <= 8), {members_checked} Omega members; d_cross equal and permanent matches"))
}

// ---------------------------------------------------------------------------

fn ac7_many_pm() -> Outcome {
    let mut summary = Vec::new();
    for d in [1usize, 2, 3] {
        let mut min_many = usize::MAX;
        for k in 0..100u64 {
            let seed = 50_000 + 1000 * d as u64 + k;
            let mut rng = stream(seed, 8);
            let n = rng.random_range(d + 1..=8);
            let (f, base) = gen_witness_instance_pm(n, d, seed).map_err(|e| e.to_string())?;
            let s = CandidateSet::new(2 * n, 0..n).map_err(|e| e.to_string())?;
            let many = many_pm_transversals(&f, &base, &s).map_err(|e| format!("seed {seed}: {e}"))?;
            let distinct: BTreeSet<&Transversal> = many.iter().collect();
            ensure!(distinct.len() == many.len(), "seed {seed}: duplicate outputs");
            ensure!(many.len() >= factorial(d + 1), "seed {seed}: only {} matchings for d = {d}", many.len());
            let all = enumerate_all_pm_transversals(&f, SearchBudget::default()).map_err(|e| e.to_string())?;
            for t in &many {
                ensure!(validate_transversal(&f, t).is_valid(), "seed {seed}: invalid output");
                ensure!(all.binary_search(t).is_ok(), "seed {seed}: oracle does not list an output");
                ensure!(omega_member_pm(&base, &s, t), "seed {seed}: output outside Omega");
            }
            min_many = min_many.min(many.len());
        }
        summary.push(format!("d = {d}: 100 instances, min output {min_many}"));
    }
    Ok(summary.join("; "))
}

// ---------------------------------------------------------------------------

fn ac8_pm_desk_run() -> Outcome {
    let (m, alpha) = (199usize, 0.5);
    let threshold = pm_degree_threshold(alpha, m).map_err(|e| e.to_string())? - 1.0;
    let (f, base) = gen_regular_bipartite_all_equal(200, m, 17).map_err(|e| e.to_string())?;
    let h = build_full_rb(&f, &base).map_err(|e| e.to_string())?;
    let degree = h.min_blue_out_degree();
    ensure!(degree as f64 >= threshold, "instance blue degree {degree} below the hypothesis {threshold:.2}");
    let mut lines = Vec::new();
    for r in [degree, 180] {
        let need = (alpha * r as f64 / 2.0).ceil() as usize;
        let mut ok = 0;
        let mut worst = usize::MAX;
        for seed in 0..10u64 {
            let cfg = SamplerConfig { r, m, alpha, ..SamplerConfig::new(seed) };
            if let Ok(out) = sample_set_pm(&h, &cfg) {
                let d = h.d_cross(&out.set).map_err(|e| e.to_string())?;
                worst = worst.min(d);
                ok += usize::from(d >= need && h.is_maximal_red_independent(&out.set));
            }
        }
        ensure!(ok >= 9, "r = {r}: only {ok}/10 seeds reached d_cross >= {need}");
        lines.push(format!("r = {r}: {ok}/10 seeds with d_cross >= {need} (min {worst})"));
    }
    Ok(format!(
        "2n = 400, m = {m}, blue degree {degree} >= threshold {threshold:.2} (r = 180 alone does not meet it); {}",
        lines.join("; ")
    ))
}

// ---------------------------------------------------------------------------

fn ac9_chernoff() -> Outcome {
    let grid: [(u64, f64); 6] = [(100, 0.1), (1000, 0.01), (100, 0.5), (1000, 0.05), (400, 0.5), (2000, 0.1)];
    let deltas = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut points = 0;
    let mut worst = f64::NEG_INFINITY;
    for (k, &(n, p)) in grid.iter().enumerate() {
        for (l, &delta) in deltas.iter().enumerate() {
            let seed = 9000 + 10 * k as u64 + l as u64;
            let rep = chernoff_monte_carlo(n, p, delta, 100_000, seed, Exec::Parallel).map_err(|e| e.to_string())?;
            ensure!(
                rep.within(rep.bound2),
                "n = {n}, p = {p}, delta = {delta}: frequency {} exceeds bound {} by more than 3 sd",
                rep.frequency,
                rep.bound2
            );
            worst = worst.max((rep.frequency - rep.bound2) / rep.std_error.max(f64::MIN_POSITIVE));
            points += 1;
        }
    }
    Ok(format!("{points} grid points (np in {{10, 50, 200}}), 1e5 trials each, all within bound (2)"))
}

// ---------------------------------------------------------------------------

/// Counts Hamiltonian transversals of an all-equal family on `K_n` from scratch:
/// every `n`-edge subset forming a Hamiltonian cycle, times every color bijection.
fn brute_all_equal_complete(n: usize) -> u64 {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut cycles = 0u64;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|&k| mask >> k & 1 == 1).map(|k| edges[k]).collect();
        let mut deg = vec![0; n];
        for &(a, b) in &chosen {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d != 2) {
            continue;
        }
        // degree 2 everywhere; connected iff a walk from 0 covers all vertices
        let (mut prev, mut cur, mut seen) = (usize::MAX, 0, 1);
        loop {
            let next = chosen
                .iter()
                .find_map(|&(a, b)| {
                    if a == cur && b != prev {
                        Some(b)
                    } else if b == cur && a != prev {
                        Some(a)
                    } else {
                        None
                    }
                })
                .unwrap();
            if next == 0 {
                break;
            }
            prev = cur;
            cur = next;
            seen += 1;
        }
        if seen == n {
            cycles += 1;
        }
    }
    cycles * (1..=n as u64).product::<u64>()
}

fn ac10_oracle_ground_truth() -> Outcome {
    let brute = brute_all_equal_complete(4);
    ensure!(brute == 72, "brute-force derivation gives {brute}, expected 72");
    let k4 = SimpleGraph::from_edges(4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)))).unwrap();
    let family = SubgraphFamily::all_equal(k4, FamilyKind::Hamiltonian);
    let count = count_ham_transversals(&family, SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure!(count == 72, "oracle counts {count} on K4");
    let brute5 = brute_all_equal_complete(5);
    let k5 = SimpleGraph::from_edges(5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)))).unwrap();
    let count5 =
        count_ham_transversals(&SubgraphFamily::all_equal(k5, FamilyKind::Hamiltonian), SearchBudget::default())
            .map_err(|e| e.to_string())?;
    ensure!(count5 as u64 == brute5, "K5: oracle {count5}, brute force {brute5}");
    for n in 3..=12 {
        let (f, _) = gen_planted_ham_family(n, 0, n as u64).map_err(|e| e.to_string())?;
        let c = count_ham_transversals(&f, SearchBudget::default()).map_err(|e| e.to_string())?;
        ensure!(c == 1, "forced cycle instance n = {n} counts {c}");
        let (g, _) = gen_planted_pm_family(n, 0, n as u64).map_err(|e| e.to_string())?;
        let c = count_pm_transversals(&g, SearchBudget::default()).map_err(|e| e.to_string())?;
        ensure!(c == 1, "forced matching instance n = {n} counts {c}");
    }
    Ok(format!("K4 = {brute} (brute force and oracle), K5 = {brute5}; forced instances n in [3, 12] count 1"))
}

// ---------------------------------------------------------------------------

fn ac11_determinism() -> Outcome {
    let mut checks = 0;
    let mut same = |label: &str, eq: bool| -> Result<(), String> {
        checks += 1;
        if eq {
            Ok(())
        } else {
            Err(format!("{label} differs between identical runs"))
        }
    };
    same("planted ham family", gen_planted_ham_family(30, 5, 9) == gen_planted_ham_family(30, 5, 9))?;
    same("dirac family", gen_dirac_family(40, 0.6, 9) == gen_dirac_family(40, 0.6, 9))?;
    same("planted dirac family", gen_planted_dirac_family(40, 0.5, 9) == gen_planted_dirac_family(40, 0.5, 9))?;
    same("regular family", gen_regular_all_equal(60, 12, 9) == gen_regular_all_equal(60, 12, 9))?;
    same("planted pm family", gen_planted_pm_family(20, 6, 9) == gen_planted_pm_family(20, 6, 9))?;
    same(
        "regular bipartite family",
        gen_regular_bipartite_all_equal(30, 10, 9) == gen_regular_bipartite_all_equal(30, 10, 9),
    )?;
    same(
        "ham witness",
        gen_witness_instance_ham(12, &[0, 4, 8], 2, 9) == gen_witness_instance_ham(12, &[0, 4, 8], 2, 9),
    )?;
    same("pm witness", gen_witness_instance_pm(8, 3, 9) == gen_witness_instance_pm(8, 3, 9))?;
    same("spread set", random_spread_set(50, 8, 9) == random_spread_set(50, 8, 9))?;

    let (f, t) = gen_regular_all_equal(120, 40, 4).map_err(|e| e.to_string())?;
    let h = build_full_ryb(&f, &t).map_err(|e| e.to_string())?;
    let cfg = SamplerConfig { m: 40, r: 38, record_log: true, ..SamplerConfig::new(11) };
    same("lll ham sampler", sample_set_lll_ham(&h, &cfg) == sample_set_lll_ham(&h, &cfg))?;

    let (f, t) = gen_planted_dirac_family(60, 0.5, 3).map_err(|e| e.to_string())?;
    let h = build_full_ryb(&f, &t).map_err(|e| e.to_string())?;
    let cfg = SamplerConfig { c: 0.5, record_log: true, ..SamplerConfig::new(12) };
    same("dirac sampler", sample_set_dirac(&h, &cfg) == sample_set_dirac(&h, &cfg))?;

    let (f, t) = gen_regular_bipartite_all_equal(40, 30, 2).map_err(|e| e.to_string())?;
    let h = build_full_rb(&f, &t).map_err(|e| e.to_string())?;
    let cfg = SamplerConfig { r: 29, record_log: true, ..SamplerConfig::new(13) };
    same("pm sampler", sample_set_pm(&h, &cfg) == sample_set_pm(&h, &cfg))?;

    let mc = |exec| chernoff_monte_carlo(500, 0.1, 0.4, 20_000, 14, exec);
    same("monte carlo", mc(Exec::Parallel) == mc(Exec::Parallel))?;
    same("monte carlo sequential vs parallel", mc(Exec::Sequential) == mc(Exec::Parallel))?;

    let (f, t) = gen_witness_instance_ham(12, &[0, 4, 8], 2, 5).map_err(|e| e.to_string())?;
    let s = CandidateSet::new(12, [0, 4, 8]).unwrap();
    same(
        "many ham",
        many_ham_transversals_with(&f, &t, &s, Exec::Sequential)
            == many_ham_transversals_with(&f, &t, &s, Exec::Parallel),
    )?;
    same(
        "ham oracle",
        enumerate_all_ham_transversals_with(&f, SearchBudget::default(), Exec::Sequential)
            == enumerate_all_ham_transversals_with(&f, SearchBudget::default(), Exec::Parallel),
    )?;
    let (f, t) = gen_witness_instance_pm(7, 3, 5).map_err(|e| e.to_string())?;
    let s = CandidateSet::new(14, 0..7).unwrap();
    same(
        "many pm",
        many_pm_transversals_with(&f, &t, &s, Exec::Sequential)
            == many_pm_transversals_with(&f, &t, &s, Exec::Parallel),
    )?;
    same(
        "pm oracle",
        enumerate_all_pm_transversals_with(&f, SearchBudget::default(), Exec::Sequential)
            == enumerate_all_pm_transversals_with(&f, SearchBudget::default(), Exec::Parallel),
    )?;
    Ok(format!("{checks} randomized operations reproduced bit-for-bit"))
}

// ---------------------------------------------------------------------------

fn big_factorial(k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

fn ac12_factorial_bounds() -> Outcome {
    let table: [(usize, f64, f64); 12] = [
        (100, 0.5, 1.0),
        (1000, 0.5, 0.5),
        (1000, 0.75, 2.0),
        (5000, 0.5, 0.1),
        (10_000, 0.6, 1.0),
        (64, 1.0, 0.01),
        (200, 0.9, 3.0),
        (12_345, 0.55, 0.25),
        (17, 0.5, 1.0),
        (800, 1.0, 4.0),
        (3000, 0.7, 0.7),
        (50, 0.8, 0.5),
    ];
    for &(n, c, eps) in &table {
        let nf = n as f64;
        let ham_k = (c * c * nf / (16.0 + eps)).ceil() as u64;
        let got = factorial_bounds(BoundParams::HamDirac { n, c, epsilon: eps }).map_err(|e| e.to_string())?;
        ensure!(got.argument == ham_k, "Hamiltonian row n = {n}: argument {} vs {ham_k}", got.argument);
        ensure!(got.value == big_factorial(ham_k), "Hamiltonian row n = {n}: value mismatch");
        let pm_k = (c * nf / (2.0 + eps)).floor() as u64;
        let got = factorial_bounds(BoundParams::PmDirac { n, c, epsilon: eps }).map_err(|e| e.to_string())?;
        ensure!(got.argument == pm_k, "matching row n = {n}: argument {} vs {pm_k}", got.argument);
        ensure!(got.value == big_factorial(pm_k), "matching row n = {n}: value mismatch");
    }
    Ok(format!("{} rows, both bounds match direct substitution", table.len()))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("AC1", "local lemma constants", ac1_lll_constants, Duration::from_secs(1)),
        ("AC2", "second Hamiltonian transversal", ac2_second_ham, Duration::from_secs(30)),
        ("AC3", "d* invariance over Omega", ac3_d_star_invariance, Duration::from_secs(300)),
        ("AC4", "Hamiltonian multiplier", ac4_many_ham, Duration::from_secs(300)),
        ("AC5", "second matching transversal", ac5_second_pm, Duration::from_secs(30)),
        ("AC6", "d_cross invariance and permanent", ac6_d_cross_invariance, Duration::from_secs(300)),
        ("AC7", "matching multiplier", ac7_many_pm, Duration::from_secs(300)),
        ("AC8", "matching sampler desk run", ac8_pm_desk_run, Duration::from_secs(120)),
        ("AC9", "Chernoff validation", ac9_chernoff, Duration::from_secs(120)),
        ("AC10", "oracle ground truths", ac10_oracle_ground_truth, Duration::from_secs(300)),
        ("AC11", "determinism", ac11_determinism, Duration::from_secs(300)),
        ("AC12", "factorial bound evaluators", ac12_factorial_bounds, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; over the {:?} limit", limit)),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {id} {name} ({:.2}s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
