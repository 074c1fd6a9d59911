use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use transversals::digraph::{omega_member_ham, omega_member_pm, DigraphError};
use transversals::exchange::{second_ham_transversal_traced, second_pm_transversal_traced, ExchangeError};
use transversals::generators::{self, GeneratorError};
use transversals::multiplier::{many_ham_transversals_with, many_pm_transversals_with, MultiplierError};
use transversals::oracle::{
    count_ham_transversals_with, count_pm_transversals, enumerate_all_ham_transversals_with,
    enumerate_all_pm_transversals_with, OracleError, SearchBudget,
};
use transversals::sampler::{self, BoundParams, SamplerConfig, SamplerError};
use transversals::{
    build_full_rb, build_full_ryb, naturally_index, validate_transversal, CandidateSet, Exec, FamilyKind,
    NaturalIndexing, SubgraphFamily, Transversal, Vertex,
};

use crate::error::CliError;
use crate::instance::{Instance, InstanceFile};
use crate::report::{listing, RunReport, Status};
use crate::setspec::parse_set;

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn digraph_error(e: DigraphError) -> CliError {
    match e {
        DigraphError::NotRedIndependent | DigraphError::NotMaximalRedIndependent | DigraphError::EmptySet => {
            CliError::Precondition(e.to_string())
        }
        DigraphError::VertexOutOfRange(_) => CliError::Input(e.to_string()),
        DigraphError::NotNaturallyIndexed | DigraphError::WrongKind => CliError::Internal(e.to_string()),
    }
}

fn exchange_error(e: ExchangeError) -> CliError {
    match e {
        ExchangeError::NotRedIndependent
        | ExchangeError::NotMaximalRedIndependent
        | ExchangeError::NotLocallyDominating
        | ExchangeError::NoBlueEscape(_) => CliError::Precondition(e.to_string()),
        ExchangeError::Digraph(d) => digraph_error(d),
        _ => CliError::Internal(e.to_string()),
    }
}

fn multiplier_error(e: MultiplierError) -> CliError {
    match e {
        MultiplierError::DStarTooSmall(_) => CliError::Precondition(format!("DStarTooSmall: {e}")),
        MultiplierError::Exchange(x) => exchange_error(x),
        MultiplierError::Digraph(d) => digraph_error(d),
        _ => CliError::Internal(e.to_string()),
    }
}

fn sampler_error(e: SamplerError) -> CliError {
    match e {
        SamplerError::ResampleBudgetExceeded(_) => CliError::Budget(e.to_string()),
        SamplerError::Precondition(_) => CliError::Precondition(e.to_string()),
        SamplerError::Domain(_) => CliError::Input(e.to_string()),
    }
}

fn generator_error(e: GeneratorError) -> CliError {
    CliError::Input(e.to_string())
}

/// The instance relabeled so that its planted transversal is canonical.
struct Canonical {
    family: SubgraphFamily,
    base: Transversal,
    indexing: NaturalIndexing,
    back: NaturalIndexing,
}

impl Canonical {
    fn new(inst: &Instance) -> Result<Canonical, CliError> {
        let (family, base, indexing) =
            naturally_index(&inst.family, inst.planted()?).map_err(|e| CliError::Input(e.to_string()))?;
        let back = indexing.inverse();
        Ok(Canonical { family, base, indexing, back })
    }

    fn set(&self, members: &[Vertex]) -> Result<CandidateSet, CliError> {
        CandidateSet::new(self.family.num_vertices(), self.indexing.map_vertices(members))
            .map_err(|e| CliError::Input(e.to_string()))
    }

    fn original(&self, t: &Transversal) -> Transversal {
        self.back.apply_transversal(t)
    }

    fn original_vertices(&self, vs: &[Vertex]) -> Vec<Vertex> {
        self.back.map_vertices(vs)
    }

    fn original_vertex(&self, v: Vertex) -> Vertex {
        self.back.vertex_perm[v]
    }
}

fn load(path: &Path) -> Result<Instance, CliError> {
    InstanceFile::read(path)?.to_instance()
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Cycle `0..n-1` with `extra-degree` chords per color.
    PlantedHam,
    /// Matching `x_i y_i` on `n` pairs with `extra-degree` cross edges per color.
    PlantedPm,
    /// Random subgraphs of `K_n` with minimum degree `⌈cn⌉`; no planted transversal.
    Dirac,
    /// As `dirac`, keeping the cycle `0..n-1` planted.
    PlantedDirac,
    /// One random `m`-regular graph through the cycle `0..n-1`, repeated for every color.
    RegularAllEqual,
    /// One random `m`-regular bipartite graph through `x_i y_i`, repeated for every color.
    RegularBipartite,
    /// Cycle family with `d* = d` exactly on `--set` (random spread set of size `d + 1` if omitted).
    Witness,
    /// Matching family with `d× = d` exactly on `x_0..x_{n-1}`.
    WitnessPm,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub model: Model,
    /// Vertices (cycle models) or pairs (matching models).
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub extra_degree: usize,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_gen(args: &GenArgs) -> Result<RunReport, CliError> {
    let model_name = args.model.to_possible_value().expect("no skipped variants").get_name().to_string();
    let need_m = || args.m.ok_or_else(|| CliError::Input(format!("model {model_name} needs --m")));
    let mut metadata = BTreeMap::new();
    metadata.insert("model".to_string(), model_name.clone());
    metadata.insert("seed".to_string(), args.seed.to_string());
    let (family, planted) = match args.model {
        Model::PlantedHam => {
            metadata.insert("extra_degree".into(), args.extra_degree.to_string());
            let (f, t) =
                generators::gen_planted_ham_family(args.n, args.extra_degree, args.seed).map_err(generator_error)?;
            (f, Some(t))
        }
        Model::PlantedPm => {
            metadata.insert("extra_degree".into(), args.extra_degree.to_string());
            let (f, t) =
                generators::gen_planted_pm_family(args.n, args.extra_degree, args.seed).map_err(generator_error)?;
            (f, Some(t))
        }
        Model::Dirac => {
            metadata.insert("c".into(), args.c.to_string());
            (generators::gen_dirac_family(args.n, args.c, args.seed).map_err(generator_error)?, None)
        }
        Model::PlantedDirac => {
            metadata.insert("c".into(), args.c.to_string());
            let (f, t) = generators::gen_planted_dirac_family(args.n, args.c, args.seed).map_err(generator_error)?;
            (f, Some(t))
        }
        Model::RegularAllEqual => {
            let m = need_m()?;
            metadata.insert("m".into(), m.to_string());
            let (f, t) = generators::gen_regular_all_equal(args.n, m, args.seed).map_err(generator_error)?;
            (f, Some(t))
        }
        Model::RegularBipartite => {
            let m = need_m()?;
            metadata.insert("m".into(), m.to_string());
            let (f, t) = generators::gen_regular_bipartite_all_equal(args.n, m, args.seed).map_err(generator_error)?;
            (f, Some(t))
        }
        Model::Witness => {
            let members = match &args.set {
                Some(spec) => parse_set(spec, FamilyKind::Hamiltonian, args.n)?,
                None => generators::random_spread_set(args.n, args.d + 1, args.seed).ok_or_else(|| {
                    CliError::Input(format!("no spread set of size {} on {} vertices", args.d + 1, args.n))
                })?,
            };
            let (f, t) =
                generators::gen_witness_instance_ham(args.n, &members, args.d, args.seed).map_err(generator_error)?;
            metadata.insert("d".into(), args.d.to_string());
            metadata.insert("set".into(), join(&members));
            (f, Some(t))
        }
        Model::WitnessPm => {
            let (f, t) = generators::gen_witness_instance_pm(args.n, args.d, args.seed).map_err(generator_error)?;
            metadata.insert("d".into(), args.d.to_string());
            metadata.insert("set".into(), join(&(0..args.n).collect::<Vec<_>>()));
            (f, Some(t))
        }
    };
    let file = InstanceFile::from_family(&family, planted.as_ref(), metadata);
    file.write(&args.out)?;
    let params = json!({
        "model": model_name, "n": args.n, "extra_degree": args.extra_degree, "c": args.c,
        "m": args.m, "d": args.d, "set": args.set, "out": args.out,
    });
    Ok(RunReport::new("gen", params, Some(args.seed)).with_results(json!({
        "num_vertices": family.num_vertices(),
        "num_subgraphs": family.num_subgraphs(),
        "base_edges": family.base().num_edges(),
        "min_subgraph_degree": family.min_subgraph_degree(),
        "planted": planted.is_some(),
        "metadata": file.metadata,
    })))
}

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct CountArgs {
    pub instance: PathBuf,
    /// Search-tree node budget.
    #[arg(long, default_value_t = 100_000_000)]
    pub max_nodes: u64,
    #[arg(long)]
    pub time_limit_secs: Option<f64>,
}

pub fn cmd_count(args: &CountArgs, sequential: bool) -> Result<RunReport, CliError> {
    let inst = load(&args.instance)?;
    let budget = SearchBudget {
        max_nodes: args.max_nodes,
        max_results: None,
        time_limit: args.time_limit_secs.map(Duration::from_secs_f64),
    };
    let params =
        json!({ "instance": args.instance, "max_nodes": args.max_nodes, "time_limit_secs": args.time_limit_secs });
    let report = RunReport::new("count", params, None);
    let counted = match inst.family.kind() {
        FamilyKind::Hamiltonian => count_ham_transversals_with(&inst.family, budget, exec(sequential)),
        FamilyKind::Matching => count_pm_transversals(&inst.family, budget),
    };
    match counted {
        Ok(count) => Ok(report.with_results(json!({ "count": count.to_string(), "exact": true }))),
        Err(OracleError::BudgetExceeded { partial, nodes }) => {
            let mut report = report.with_results(json!({
                "exact": false, "found_before_stop": partial.len(), "nodes": nodes,
            }));
            report.status = Status::Inconclusive;
            report.warnings.push("search budget exhausted; count is a lower bound".into());
            Ok(report)
        }
        Err(OracleError::TooLarge(colors)) => {
            Err(CliError::Budget(format!("{colors} colors exceed the oracle's limit of 64")))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct SecondArgs {
    pub instance: PathBuf,
    /// Comma-separated vertices of `S`; matching instances accept `x3`/`y3`.
    #[arg(long)]
    pub set: String,
}

pub fn cmd_second(args: &SecondArgs) -> Result<RunReport, CliError> {
    let inst = load(&args.instance)?;
    let n = inst.family.num_vertices();
    let members = parse_set(&args.set, inst.family.kind(), n)?;
    let canon = Canonical::new(&inst)?;
    let s = canon.set(&members)?;
    let params = json!({ "instance": args.instance, "set": members });
    let (second, provenance) = match inst.family.kind() {
        FamilyKind::Hamiltonian => {
            let h = build_full_ryb(&canon.family, &canon.base).map_err(digraph_error)?;
            let (t, trace) =
                second_ham_transversal_traced(&canon.family, &canon.base, &s, &h).map_err(exchange_error)?;
            let member = omega_member_ham(&canon.base, &s, &t);
            let provenance = json!({
                "walk_steps": trace.pivots.len(),
                "pivots": trace.pivots.iter().map(|&v| canon.original_vertex(v)).collect::<Vec<_>>(),
                "omega_member": member,
            });
            (t, provenance)
        }
        FamilyKind::Matching => {
            let h = build_full_rb(&canon.family, &canon.base).map_err(digraph_error)?;
            let (t, cycle) =
                second_pm_transversal_traced(&canon.family, &canon.base, &s, &h).map_err(exchange_error)?;
            let member = omega_member_pm(&canon.base, &s, &t);
            let blue: Vec<[Vertex; 2]> = cycle
                .blue_arcs()
                .iter()
                .map(|a| [canon.original_vertex(a.tail), canon.original_vertex(a.head)])
                .collect();
            let vertices: Vec<Vertex> = cycle.vertices(&h).into_iter().map(|v| canon.original_vertex(v)).collect();
            let provenance = json!({
                "alternating_cycle": { "length": cycle.len(), "blue_arcs": blue, "vertices": vertices },
                "omega_member": member,
            });
            (t, provenance)
        }
    };
    let original = canon.original(&second);
    let valid = validate_transversal(&inst.family, &original).is_valid();
    let distinct = Some(&original) != inst.planted.as_ref();
    Ok(RunReport::new("second", params, None).with_results(json!({
        "transversal": listing(&original, n),
        "valid": valid,
        "distinct_from_planted": distinct,
        "provenance": provenance,
    })))
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Moser–Tardos over the cycle auxiliary digraph.
    LllHam,
    /// Draw, thin to red-independence, redraw until the threshold is met.
    Dirac,
    /// Moser–Tardos over one endpoint per matching edge.
    Pm,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub seed: u64,
    /// Degree parameter; defaults to the minimum out-degree of the auxiliary digraph.
    #[arg(long)]
    pub r: Option<usize>,
    /// Maximum-degree parameter; defaults to the maximum degree of the base graph.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    /// Inclusion probability override.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_resamples: usize,
    /// Write one JSON line per resampling step.
    #[arg(long)]
    pub debug_log: Option<PathBuf>,
}

pub fn cmd_sample_set(args: &SampleArgs) -> Result<RunReport, CliError> {
    let inst = load(&args.instance)?;
    let canon = Canonical::new(&inst)?;
    let n = inst.family.num_vertices();
    let m = args.m.unwrap_or_else(|| inst.family.base().max_degree());
    let method = args.method.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut cfg = SamplerConfig {
        max_resamples: args.max_resamples,
        p: args.p,
        alpha: args.alpha,
        r: 0,
        m,
        c: args.c,
        record_log: args.debug_log.is_some(),
        ..SamplerConfig::new(args.seed)
    };
    let kind_ok = match args.method {
        Method::LllHam | Method::Dirac => inst.family.kind() == FamilyKind::Hamiltonian,
        Method::Pm => inst.family.kind() == FamilyKind::Matching,
    };
    if !kind_ok {
        return Err(CliError::Input(format!("method {method} does not apply to a {:?} instance", inst.family.kind())));
    }
    let mut extra = serde_json::Map::new();
    let outcome = match args.method {
        Method::LllHam | Method::Dirac => {
            let h = build_full_ryb(&canon.family, &canon.base).map_err(digraph_error)?;
            cfg.r = args.r.unwrap_or_else(|| h.min_yellow_out_degree().min(h.min_blue_out_degree()));
            let out = if args.method == Method::LllHam {
                sampler::sample_set_lll_ham(&h, &cfg)
            } else {
                sampler::sample_set_dirac(&h, &cfg)
            };
            let out = out.map_err(sampler_error);
            let out = match out {
                Err(CliError::Budget(why)) => return Ok(inconclusive("sample-set", args, &cfg, why)),
                other => other?,
            };
            let d = if out.set.is_empty() { 0 } else { h.d_star(&out.set).map_err(digraph_error)? };
            extra.insert("d_star".into(), json!(d));
            if args.method == Method::LllHam {
                let mf = m as f64;
                let stated = (cfg.r as f64 / 400.0 * (mf.ln() / mf).sqrt()).ceil();
                extra.insert("guarantee_r_over_800".into(), json!(out.guaranteed));
                extra.insert("guarantee_r_over_400_form".into(), json!(stated));
                extra.insert("p".into(), json!(cfg.ham_p()));
            } else {
                extra.insert("threshold".into(), json!(sampler::dirac_threshold(n, cfg.c)));
                extra.insert("p".into(), json!(cfg.dirac_p()));
            }
            out
        }
        Method::Pm => {
            let h = build_full_rb(&canon.family, &canon.base).map_err(digraph_error)?;
            cfg.r = args.r.unwrap_or_else(|| h.min_blue_out_degree());
            let out = match sampler::sample_set_pm(&h, &cfg).map_err(sampler_error) {
                Err(CliError::Budget(why)) => return Ok(inconclusive("sample-set", args, &cfg, why)),
                other => other?,
            };
            extra.insert("d_cross".into(), json!(h.d_cross(&out.set).map_err(digraph_error)?));
            extra.insert("maximal_red_independent".into(), json!(h.is_maximal_red_independent(&out.set)));
            if let Ok(t) = sampler::pm_degree_threshold(cfg.alpha, m) {
                extra.insert("degree_threshold".into(), json!(t - 1.0));
            }
            out
        }
    };
    if let Some(path) = &args.debug_log {
        write_log(path, &outcome.log)?;
    }
    let mut results = serde_json::Map::new();
    results.insert("method".into(), json!(method));
    results.insert("set".into(), json!(canon.original_vertices(&outcome.members)));
    results.insert("size".into(), json!(outcome.members.len()));
    results.insert("resamples".into(), json!(outcome.resamples));
    results.insert("guaranteed".into(), json!(outcome.guaranteed));
    results.insert("r".into(), json!(cfg.r));
    results.insert("m".into(), json!(cfg.m));
    results.extend(extra);
    let mut report =
        RunReport::new("sample-set", sample_params(args, &cfg), Some(args.seed)).with_results(Value::Object(results));
    report.warnings = outcome.warnings;
    Ok(report)
}

fn sample_params(args: &SampleArgs, cfg: &SamplerConfig) -> Value {
    json!({
        "instance": args.instance, "method": args.method.to_possible_value().map(|v| v.get_name().to_string()),
        "r": cfg.r, "m": cfg.m, "alpha": cfg.alpha, "c": cfg.c, "p": cfg.p, "max_resamples": cfg.max_resamples,
    })
}

fn inconclusive(command: &str, args: &SampleArgs, cfg: &SamplerConfig, why: String) -> RunReport {
    let mut report = RunReport::new(command, sample_params(args, cfg), Some(args.seed))
        .with_results(json!({ "set": null, "reason": why }));
    report.status = Status::Inconclusive;
    report
}

fn write_log(path: &Path, log: &[transversals::sampler::ResampleRecord]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    for record in log {
        serde_json::to_writer(&mut w, record).expect("records serialize");
        w.write_all(b"\n").map_err(io)?;
    }
    w.flush().map_err(io)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct MultiplyArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub set: String,
    /// Cross-check against the brute-force oracle when the instance has at most this many vertices.
    #[arg(long, default_value_t = 12)]
    pub oracle_max_vertices: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub oracle_max_nodes: u64,
    /// Transversals listed in the report (all are counted).
    #[arg(long, default_value_t = 720)]
    pub list_limit: usize,
}

pub fn cmd_multiply(args: &MultiplyArgs, sequential: bool) -> Result<RunReport, CliError> {
    let inst = load(&args.instance)?;
    let n = inst.family.num_vertices();
    let members = parse_set(&args.set, inst.family.kind(), n)?;
    let canon = Canonical::new(&inst)?;
    let s = canon.set(&members)?;
    let ex = exec(sequential);
    let (d, many) = match inst.family.kind() {
        FamilyKind::Hamiltonian => {
            let h = build_full_ryb(&canon.family, &canon.base).map_err(digraph_error)?;
            let d = if s.is_empty() { 0 } else { h.d_star(&s).map_err(digraph_error)? };
            (d, many_ham_transversals_with(&canon.family, &canon.base, &s, ex).map_err(multiplier_error)?)
        }
        FamilyKind::Matching => {
            let h = build_full_rb(&canon.family, &canon.base).map_err(digraph_error)?;
            let d = h.d_cross(&s).map_err(digraph_error)?;
            (d, many_pm_transversals_with(&canon.family, &canon.base, &s, ex).map_err(multiplier_error)?)
        }
    };
    let in_omega = many.iter().all(|t| match t.kind() {
        transversals::TransversalKind::Cycle => omega_member_ham(&canon.base, &s, t),
        transversals::TransversalKind::Matching => omega_member_pm(&canon.base, &s, t),
    });
    let mut originals: Vec<Transversal> = many.iter().map(|t| canon.original(t)).collect();
    originals.sort();
    let all_valid = originals.iter().all(|t| validate_transversal(&inst.family, t).is_valid());
    let oracle = if n <= args.oracle_max_vertices {
        let budget = SearchBudget::nodes(args.oracle_max_nodes);
        let all = match inst.family.kind() {
            FamilyKind::Hamiltonian => enumerate_all_ham_transversals_with(&inst.family, budget, ex),
            FamilyKind::Matching => enumerate_all_pm_transversals_with(&inst.family, budget, ex),
        };
        match all {
            Ok(all) => json!({
                "status": "complete",
                "total": all.len(),
                "contains_all_outputs": originals.iter().all(|t| all.binary_search(t).is_ok()),
            }),
            Err(OracleError::BudgetExceeded { nodes, .. }) => json!({ "status": "budget_exceeded", "nodes": nodes }),
            Err(e) => json!({ "status": "unavailable", "reason": e.to_string() }),
        }
    } else {
        json!({ "status": "skipped", "reason": format!("more than {} vertices", args.oracle_max_vertices) })
    };
    let listed: Vec<Value> = originals.iter().take(args.list_limit).map(|t| listing(t, n)).collect();
    let params = json!({ "instance": args.instance, "set": members, "oracle_max_vertices": args.oracle_max_vertices });
    Ok(RunReport::new("multiply", params, None).with_results(json!({
        "d": d,
        "required": factorial(d + 1).to_string(),
        "count": originals.len(),
        "meets_requirement": originals.len() as u128 >= factorial(d + 1),
        "all_valid": all_valid,
        "all_in_omega": in_omega,
        "oracle": oracle,
        "listed": listed.len(),
        "transversals": listed,
    })))
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundId {
    /// Both local-lemma inequalities at `--m`.
    LllCond,
    /// Minimal passing `m` of both inequalities over `[--lo, --hi]`.
    LllScan,
    /// `⌈ln m / 60⌉!` transversals, all `G_i = G` with `Δ(G) = m`.
    HamMaxDegree,
    /// `⌈c²n/(16+ε)⌉!` Hamiltonian transversals under minimum degree `cn`.
    HamDirac,
    /// `⌈½ ln m⌉!` perfect matching transversals.
    PmMaxDegree,
    /// `⌊cn/(2+ε)⌋!` perfect matching transversals under minimum degree `cn`.
    PmDirac,
    /// Hamiltonian count from minimum degree `t` and maximum degree `m`.
    HamMinDegree,
    /// Matching count from minimum degree `t`, maximum degree `m` and `α`.
    PmMinDegree,
    /// Least admissible minimum degree for the matching sampler.
    PmThreshold,
    /// `c²n/16 − (15c²/8)√(n ln n)`.
    DiracThreshold,
    /// Both lower-tail bounds at mean `--mu` and deviation `--delta`.
    Chernoff,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(value_enum)]
    pub id: BoundId,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub lo: Option<usize>,
    #[arg(long)]
    pub hi: Option<usize>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Input(format!("missing --{name}")))
}

pub fn cmd_bounds(args: &BoundsArgs) -> Result<RunReport, CliError> {
    let id = args.id.to_possible_value().expect("no skipped variants").get_name().to_string();
    let domain = |e: SamplerError| CliError::Input(e.to_string());
    let factorial_params = match args.id {
        BoundId::HamMaxDegree => Some(BoundParams::HamMaxDegree { m: need(args.m, "m")? }),
        BoundId::HamDirac => Some(BoundParams::HamDirac {
            n: need(args.n, "n")?,
            c: need(args.c, "c")?,
            epsilon: need(args.eps, "eps")?,
        }),
        BoundId::PmMaxDegree => Some(BoundParams::PmMaxDegree { m: need(args.m, "m")? }),
        BoundId::PmDirac => {
            Some(BoundParams::PmDirac { n: need(args.n, "n")?, c: need(args.c, "c")?, epsilon: need(args.eps, "eps")? })
        }
        BoundId::HamMinDegree => Some(BoundParams::HamMinDegree { m: need(args.m, "m")?, t: need(args.t, "t")? }),
        BoundId::PmMinDegree => Some(BoundParams::PmMinDegree {
            m: need(args.m, "m")?,
            t: need(args.t, "t")?,
            alpha: need(args.alpha, "alpha")?,
        }),
        _ => None,
    };
    let (params, results) = if let Some(p) = factorial_params {
        let b = sampler::factorial_bounds(p).map_err(domain)?;
        (
            serde_json::to_value(p).expect("params serialize"),
            json!({
                "expression": format!("{}!", b.argument),
                "argument": b.argument,
                "value": b.value.to_string(),
            }),
        )
    } else {
        match args.id {
            BoundId::LllCond => {
                let m = need(args.m, "m")?;
                let r = sampler::lll_condition_ham(m).map_err(domain)?;
                (json!({ "m": m }), serde_json::to_value(r).expect("report serializes"))
            }
            BoundId::LllScan => {
                let (lo, hi) = (args.lo.unwrap_or(3), args.hi.unwrap_or(5000));
                let r = sampler::lll_scan_ham(lo, hi).map_err(domain)?;
                (json!({ "lo": lo, "hi": hi }), serde_json::to_value(r).expect("scan serializes"))
            }
            BoundId::PmThreshold => {
                let (alpha, m) = (need(args.alpha, "alpha")?, need(args.m, "m")?);
                let t = sampler::pm_degree_threshold(alpha, m).map_err(domain)?;
                (
                    json!({ "alpha": alpha, "m": m }),
                    json!({
                        "min_degree_t": t,
                        "blue_degree_r": t - 1.0,
                        "log_form": sampler::pm_log_degree_form(m),
                    }),
                )
            }
            BoundId::DiracThreshold => {
                let (n, c) = (need(args.n, "n")?, need(args.c, "c")?);
                (json!({ "n": n, "c": c }), json!({ "threshold": sampler::dirac_threshold(n, c) }))
            }
            BoundId::Chernoff => {
                let (mu, delta) = (need(args.mu, "mu")?, need(args.delta, "delta")?);
                let (b1, b2) = sampler::chernoff_bounds(mu, delta).map_err(domain)?;
                (json!({ "mu": mu, "delta": delta }), json!({ "bound1": b1, "bound2": b2 }))
            }
            _ => unreachable!("factorial ids handled above"),
        }
    };
    let mut report = RunReport::new("bounds", params, None).with_results(results);
    report.results["id"] = json!(id);
    Ok(report)
}
