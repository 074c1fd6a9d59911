use num_bigint::BigUint;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::exec::Exec;
use crate::rng::stream;

use super::SamplerError;

fn domain(msg: String) -> SamplerError {
    SamplerError::Domain(msg)
}

/// `((e^{-δ} / (1-δ)^{1-δ})^μ, exp(-δ²μ/2))`, the two lower-tail bounds for `Pr(Y < (1-δ)μ)`.
pub fn chernoff_bounds(mu: f64, delta: f64) -> Result<(f64, f64), SamplerError> {
    if mu.is_nan() || mu <= 0.0 {
        return Err(domain(format!("mu = {mu} must be positive")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain(format!("delta = {delta} outside (0, 1)")));
    }
    let log1 = mu * (-delta - (1.0 - delta) * (1.0 - delta).ln());
    Ok((log1.exp(), (-0.5 * delta * delta * mu).exp()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub n: u64,
    pub p: f64,
    pub delta: f64,
    pub trials: usize,
    pub hits: u64,
    pub frequency: f64,
    pub std_error: f64,
    pub bound1: f64,
    pub bound2: f64,
}

impl MonteCarloReport {
    /// Empirical tail no more than three standard errors above `bound`.
    pub fn within(&self, bound: f64) -> bool {
        self.frequency <= bound + 3.0 * self.std_error
    }
}

const MC_CHUNKS: usize = 64;

/// Empirical `Pr(Bin(n, p) < (1-δ)np)` over `trials` draws, next to both bounds.
///
/// Trials are split into a fixed number of chunks with their own streams, so
/// the result does not depend on `exec`.
pub fn chernoff_monte_carlo(
    n: u64,
    p: f64,
    delta: f64,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarloReport, SamplerError> {
    let mu = n as f64 * p;
    let (bound1, bound2) = chernoff_bounds(mu, delta)?;
    let dist = Binomial::new(n, p).map_err(|e| domain(e.to_string()))?;
    let cut = (1.0 - delta) * mu;
    let hits = exec.sum_range(MC_CHUNKS, |k| {
        let count = trials / MC_CHUNKS + usize::from(k < trials % MC_CHUNKS);
        let mut rng = stream(seed, k as u64);
        (0..count).filter(|_| (dist.sample(&mut rng) as f64) < cut).count() as u64
    });
    let frequency = hits as f64 / trials as f64;
    let std_error = (frequency * (1.0 - frequency) / trials as f64).sqrt();
    Ok(MonteCarloReport { n, p, delta, trials, hits, frequency, std_error, bound1, bound2 })
}

/// Both sides of the two local-lemma inequalities for the Hamiltonian sampler.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub m: usize,
    pub p: f64,
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub xi: f64,
    /// `x(1-x)^6(1-y)^{4m-4} - p²`, required positive.
    pub first_margin: f64,
    pub first_holds: bool,
    /// `ξ^{pr}`.
    pub second_lhs: f64,
    /// `y(1-x)^{4m-4}(1-y)^{2(m-1)²}`.
    pub second_rhs: f64,
    pub second_margin: f64,
    pub second_holds: bool,
}

/// `ξ = e^{-399/400} / (1/400)^{1/400}`.
pub fn xi() -> f64 {
    (-399.0f64 / 400.0).exp() / (1.0f64 / 400.0).powf(1.0 / 400.0)
}

/// Evaluates the inequalities with `p = ½√(ln m/m)`, `x = 1.05p²`, `y = 1/m²`, `r = 7√(m ln m) + 2`.
pub fn lll_condition_ham(m: usize) -> Result<InequalityReport, SamplerError> {
    if m < 3 {
        return Err(domain(format!("m = {m} must be at least 3")));
    }
    let mf = m as f64;
    let p = 0.5 * (mf.ln() / mf).sqrt();
    let x = 1.05 * p * p;
    let y = 1.0 / (mf * mf);
    let r = 7.0 * (mf * mf.ln()).sqrt() + 2.0;
    let xi = xi();
    let first_margin = x * (1.0 - x).powi(6) * (1.0 - y).powf(4.0 * mf - 4.0) - p * p;
    let second_lhs = xi.powf(p * r);
    let second_rhs = y * (1.0 - x).powf(4.0 * mf - 4.0) * (1.0 - y).powf(2.0 * (mf - 1.0) * (mf - 1.0));
    let second_margin = second_rhs - second_lhs;
    Ok(InequalityReport {
        m,
        p,
        x,
        y,
        r,
        xi,
        first_margin,
        first_holds: first_margin > 0.0,
        second_lhs,
        second_rhs,
        second_margin,
        second_holds: second_margin > 0.0,
    })
}

/// Where each inequality starts holding for good on `[lo, hi]`, and how often its sign flips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityScan {
    pub lo: usize,
    pub hi: usize,
    pub first_min_passing: Option<usize>,
    pub second_min_passing: Option<usize>,
    pub first_sign_changes: usize,
    pub second_sign_changes: usize,
}

pub fn lll_scan_ham(lo: usize, hi: usize) -> Result<InequalityScan, SamplerError> {
    if lo < 3 || hi < lo {
        return Err(domain(format!("bad range [{lo}, {hi}]")));
    }
    let reports: Vec<InequalityReport> = (lo..=hi).map(|m| lll_condition_ham(m).expect("m >= 3")).collect();
    let summarize = |holds: Vec<bool>| {
        let changes = holds.windows(2).filter(|w| w[0] != w[1]).count();
        // smallest m such that every m' in [m, hi] passes
        let min_passing = match holds.iter().rposition(|&h| !h) {
            None => Some(lo),
            Some(k) if k + 1 < holds.len() => Some(lo + k + 1),
            Some(_) => None,
        };
        (min_passing, changes)
    };
    let (first_min_passing, first_sign_changes) = summarize(reports.iter().map(|r| r.first_holds).collect());
    let (second_min_passing, second_sign_changes) = summarize(reports.iter().map(|r| r.second_holds).collect());
    Ok(InequalityScan { lo, hi, first_min_passing, second_min_passing, first_sign_changes, second_sign_changes })
}

/// `4(1 + ln(2m² − 2m + 1))/(1 − α)² + 1`, the least admissible minimum degree `t`.
pub fn pm_degree_threshold(alpha: f64, m: usize) -> Result<f64, SamplerError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha = {alpha} outside (0, 1)")));
    }
    if m < 2 {
        return Err(domain(format!("m = {m} must be at least 2")));
    }
    let mf = m as f64;
    Ok(4.0 * (1.0 + (2.0 * mf * mf - 2.0 * mf + 1.0).ln()) / ((1.0 - alpha) * (1.0 - alpha)) + 1.0)
}

/// `10 ln m + 6`, the degree condition of the logarithmic matching count.
pub fn pm_log_degree_form(m: usize) -> f64 {
    10.0 * (m as f64).ln() + 6.0
}

/// `ρ(q) = exp(−½(1 − ε)²(r/2 − q))` with `ε = (αr/2 − q)/(r/2 − q)`, for `0 ≤ q < αr/2`.
pub fn pm_event_bound(alpha: f64, r: f64, q: f64) -> Result<f64, SamplerError> {
    if !(alpha > 0.0 && alpha < 1.0) || r.is_nan() || r <= 0.0 || q < 0.0 || q >= alpha * r / 2.0 {
        return Err(domain(format!("need 0 < alpha < 1, r > 0, 0 <= q < alpha r / 2; got {alpha}, {r}, {q}")));
    }
    let eps = (alpha * r / 2.0 - q) / (r / 2.0 - q);
    Ok((-0.5 * (1.0 - eps) * (1.0 - eps) * (r / 2.0 - q)).exp())
}

/// `c²n/16 − (15c²/8)·√(n ln n)`.
pub fn dirac_threshold(n: usize, c: f64) -> f64 {
    let nf = n as f64;
    c * c * nf / 16.0 - 15.0 * c * c / 8.0 * (nf * nf.ln()).sqrt()
}

/// Parameters of each counting statement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "bound", rename_all = "snake_case")]
pub enum BoundParams {
    /// `⌈ln m / 60⌉!`, `m ≥ 262`.
    HamMaxDegree { m: usize },
    /// `⌈c²n/(16+ε)⌉!`, `c ≥ ½`, `ε > 0`.
    HamDirac { n: usize, c: f64, epsilon: f64 },
    /// `⌈½ ln m⌉!`, `m ≥ 44`.
    PmMaxDegree { m: usize },
    /// `⌊cn/(2+ε)⌋!`, `c ≥ ½`, `ε > 0`.
    PmDirac { n: usize, c: f64, epsilon: f64 },
    /// `⌊(t−2)/400·√(ln m/m) + 1⌋!`, `m ≥ 262`, `t ≥ 7√(m ln m)`.
    HamMinDegree { m: usize, t: usize },
    /// `⌊½α(t−1) + 1⌋!`, `m ≥ 37`, `α ∈ (0,1)`, `t` at least [`pm_degree_threshold`].
    PmMinDegree { m: usize, t: usize, alpha: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorialBound {
    /// `k` in the bound `k!`.
    pub argument: u64,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Evaluates the count `k!` claimed under `params`.
pub fn factorial_bounds(params: BoundParams) -> Result<FactorialBound, SamplerError> {
    let check_c_eps = |c: f64, eps: f64| {
        if c.is_nan() || c < 0.5 || eps.is_nan() || eps <= 0.0 {
            Err(domain(format!("need c >= 1/2 and epsilon > 0; got c = {c}, epsilon = {eps}")))
        } else {
            Ok(())
        }
    };
    let k: f64 = match params {
        BoundParams::HamMaxDegree { m } => {
            if m < 262 {
                return Err(domain(format!("m = {m} below 262")));
            }
            ((m as f64).ln() / 60.0).ceil()
        }
        BoundParams::HamDirac { n, c, epsilon } => {
            check_c_eps(c, epsilon)?;
            (c * c * n as f64 / (16.0 + epsilon)).ceil()
        }
        BoundParams::PmMaxDegree { m } => {
            if m < 44 {
                return Err(domain(format!("m = {m} below 44")));
            }
            (0.5 * (m as f64).ln()).ceil()
        }
        BoundParams::PmDirac { n, c, epsilon } => {
            check_c_eps(c, epsilon)?;
            (c * n as f64 / (2.0 + epsilon)).floor()
        }
        BoundParams::HamMinDegree { m, t } => {
            let mf = m as f64;
            if m < 262 {
                return Err(domain(format!("m = {m} below 262")));
            }
            if (t as f64) < 7.0 * (mf * mf.ln()).sqrt() {
                return Err(domain(format!("t = {t} below 7·√(m ln m)")));
            }
            ((t as f64 - 2.0) / 400.0 * (mf.ln() / mf).sqrt() + 1.0).floor()
        }
        BoundParams::PmMinDegree { m, t, alpha } => {
            if m < 37 {
                return Err(domain(format!("m = {m} below 37")));
            }
            let needed = pm_degree_threshold(alpha, m)?;
            if (t as f64) < needed {
                return Err(domain(format!("t = {t} below {needed:.3}")));
            }
            (0.5 * alpha * (t as f64 - 1.0) + 1.0).floor()
        }
    };
    let argument = k.max(0.0) as u64;
    Ok(FactorialBound { argument, value: factorial(argument) })
}
