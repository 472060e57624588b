//! The random-time bound over the class `M_w` of processes with non-decreasing
//! trajectories in `[0,1]` and `E μ{t : ξ_t > s} ≥ 1 − m(s)`:
//!
//! ```text
//! E ξ_τ  ≥  ∫_0^1 m⁻¹( ∫_{1−y}^1 r_τ(s) ds ) dy.
//! ```
//!
//! The probability space is replaced by the rank fraction `y = P{τ ≤ τ(ω)}`,
//! which is uniform on `(0,1]` when `τ` has no atoms. Empirical `τ` with ties
//! is first spread apart by [`jitter_tau`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::func1d::{check_unit, integrate_pieces, EmpiricalRV, Func1dError, MonotoneMap1D};
use crate::poset::{grid_label, GridOrder, Poset, PosetError, QuerySet};
use crate::scale::{Rational, Scalar, ValueScale};
use crate::continuous::Constraint;
use crate::solver::{corollary_disjoint_min, SolveError};

/// Default spread for tied samples.
pub const DEFAULT_JITTER: f64 = 1e-9;
/// Trials per independent random stream in Monte Carlo mode.
pub const MC_CHUNK: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProcessError {
    #[error(transparent)]
    Func(#[from] Func1dError),
    #[error("membership violated: {0}")]
    MembershipViolation(ProcessFailure),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("monte carlo needs at least one trial")]
    NoTrials,
    #[error("jitter width must be positive, got {0}")]
    InvalidJitter(f64),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessFailure {
    /// The trajectory at rank fraction `y` decreases between `t_lo < t_hi`.
    NotMonotone { y: f64, t_lo: f64, t_hi: f64 },
    Distribution {
        s: f64,
        measure: f64,
        budget: f64,
    },
}

impl std::fmt::Display for ProcessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProcessFailure::NotMonotone { y, t_lo, t_hi } => {
                write!(f, "trajectory at y = {y} decreases between t = {t_lo} and t = {t_hi}")
            }
            ProcessFailure::Distribution { s, measure, budget } => write!(
                f,
                "measure of {{ξ ≤ m⁻¹({s})}} is {measure}, off by more than {budget}"
            ),
        }
    }
}

/// Spreads tied samples apart so that all values are distinct.
///
/// A group of `L` copies of `v < 1` becomes `v + j·w/L` for `j = 0..L`, with
/// `w = min(δ, (next − v)/2, (1 − v)/2)`; a group at `v = 1` moves down instead,
/// by less than half the gap to the previous value. The sort order and the
/// distinct values themselves are kept.
pub fn jitter_tau(tau: &EmpiricalRV, delta: f64) -> Result<EmpiricalRV, ProcessError> {
    if !(delta > 0.0) {
        return Err(ProcessError::InvalidJitter(delta));
    }
    if !tau.has_ties() {
        return Ok(tau.clone());
    }
    let xs = tau.samples();
    let mut out = Vec::with_capacity(xs.len());
    let mut i = 0;
    while i < xs.len() {
        let v = xs[i];
        let end = xs[i..].iter().position(|&x| x != v).map_or(xs.len(), |p| i + p);
        let count = end - i;
        if count == 1 {
            out.push(v);
        } else if v < 1.0 {
            let next = xs.get(end).copied().unwrap_or(1.0);
            let width = delta.min(0.5 * (next - v)).min(0.5 * (1.0 - v));
            out.extend((0..count).map(|j| v + j as f64 * width / count as f64));
        } else {
            let prev = if i == 0 { 0.0 } else { xs[i - 1] };
            let width = delta.min(0.5 * (1.0 - prev));
            let steps = (count + 1) as f64;
            out.extend((0..count).map(|j| 1.0 - (count - j) as f64 * width / steps));
        }
        i = end;
    }
    Ok(EmpiricalRV::new(out)?)
}

/// The extremal process for `(m, τ)`, addressed by time `t` and rank fraction `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalProcess {
    m: MonotoneMap1D,
    tau: EmpiricalRV,
    mean: f64,
}

impl ExtremalProcess {
    /// Ties in `tau` are spread by [`DEFAULT_JITTER`].
    pub fn new(m: MonotoneMap1D, tau: &EmpiricalRV) -> Result<Self, ProcessError> {
        Self::with_jitter(m, tau, DEFAULT_JITTER)
    }

    pub fn with_jitter(m: MonotoneMap1D, tau: &EmpiricalRV, delta: f64) -> Result<Self, ProcessError> {
        let tau = jitter_tau(tau, delta)?;
        let mean = tau.mean();
        Ok(ExtremalProcess { m, tau, mean })
    }

    pub fn m(&self) -> &MonotoneMap1D {
        &self.m
    }

    /// The (jittered) random time.
    pub fn tau(&self) -> &EmpiricalRV {
        &self.tau
    }

    /// `τ` at rank fraction `y`.
    pub fn threshold(&self, y: f64) -> f64 {
        self.tau.quantile(y)
    }

    /// `m⁻¹(R(y))`, taken while `t ≤ τ`.
    pub fn lower_value(&self, y: f64) -> f64 {
        let r = self.tau.lower_tail_integral(y).clamp(0.0, 1.0);
        self.m.inverse(r).expect("clamped to [0,1]")
    }

    /// `m⁻¹(E τ + ∫_{1−y}^1 (1 − r_τ))`, taken once `t > τ`.
    pub fn upper_value(&self, y: f64) -> f64 {
        let level = self.mean + y - self.tau.lower_tail_integral(y);
        self.m.inverse(level.clamp(0.0, 1.0)).expect("clamped to [0,1]")
    }

    pub fn eval(&self, t: f64, y: f64) -> Result<f64, ProcessError> {
        check_unit(t)?;
        check_unit(y)?;
        Ok(if t <= self.threshold(y) {
            self.lower_value(y)
        } else {
            self.upper_value(y)
        })
    }

    /// `y = P{τ ≤ v}` under the empirical law.
    pub fn rank_fraction(&self, v: f64) -> f64 {
        rank_fraction(&self.tau, v)
    }
}

/// `#{samples ≤ v} / M`.
pub fn rank_fraction(tau: &EmpiricalRV, v: f64) -> f64 {
    tau.samples().partition_point(|&x| x <= v) as f64 / tau.len() as f64
}

/// `∫_0^1 m⁻¹(R(y)) dy`; the inner integral is exact on the step `r_τ`.
pub fn theorem2_bound(m: &MonotoneMap1D, tau: &EmpiricalRV, tol: f64) -> Result<f64, ProcessError> {
    let g = |y: f64| {
        let r = tau.lower_tail_integral(y).clamp(0.0, 1.0);
        m.inverse(r).expect("clamped to [0,1]")
    };
    Ok(integrate_pieces(g, 0.0, 1.0, &tau.rank_breakpoints(), tol)?)
}

/// `∫_0^1 r_τ(s)·s ds`, summed piece by piece.
pub fn simplified_bound(tau: &EmpiricalRV) -> f64 {
    let m = tau.len() as f64;
    tau.samples()
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &v)| {
            let i = i as f64;
            v * ((i + 1.0) * (i + 1.0) - i * i)
        })
        .sum::<f64>()
        / (2.0 * m * m)
}

/// `|theorem2_bound(id, τ) − simplified_bound(τ)|`.
pub fn fubini_check(tau: &EmpiricalRV, tol: f64) -> Result<f64, ProcessError> {
    let full = theorem2_bound(&MonotoneMap1D::identity(), tau, tol)?;
    Ok((full - simplified_bound(tau)).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpectationMode {
    Quadrature { tol: f64 },
    MonteCarlo { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expectation {
    pub value: f64,
    /// Zero in quadrature mode.
    pub stderr: f64,
    pub trials: Option<usize>,
}

/// `E ξ*_τ`, either by integrating over the rank fraction or by sampling `ω`.
///
/// Monte Carlo draws are split into chunks of [`MC_CHUNK`] trials; chunk `c`
/// uses stream `c` of a ChaCha8 generator keyed by `seed`, so the result does
/// not depend on how rayon schedules the chunks.
pub fn expectation_at_tau(proc: &ExtremalProcess, mode: ExpectationMode) -> Result<Expectation, ProcessError> {
    match mode {
        ExpectationMode::Quadrature { tol } => {
            let g = |y: f64| proc.eval(proc.threshold(y), y).expect("y in [0,1]");
            let value = integrate_pieces(g, 0.0, 1.0, &proc.tau().rank_breakpoints(), tol)?;
            Ok(Expectation {
                value,
                stderr: 0.0,
                trials: None,
            })
        }
        ExpectationMode::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(ProcessError::NoTrials);
            }
            let samples = proc.tau().samples();
            let chunks = trials.div_ceil(MC_CHUNK);
            let partial: Vec<(f64, f64)> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c as u64);
                    let count = MC_CHUNK.min(trials - c * MC_CHUNK);
                    let (mut sum, mut sq) = (0.0, 0.0);
                    for _ in 0..count {
                        let time = samples[rng.gen_range(0..samples.len())];
                        let y = proc.rank_fraction(time);
                        let v = proc.eval(time, y).expect("sample and rank in [0,1]");
                        sum += v;
                        sq += v * v;
                    }
                    (sum, sq)
                })
                .collect();
            let (sum, sq) = partial.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
            let k = trials as f64;
            let mean = sum / k;
            let var = if trials > 1 {
                ((sq - k * mean * mean) / (k - 1.0)).max(0.0)
            } else {
                0.0
            };
            Ok(Expectation {
                value: mean,
                stderr: (var / k).sqrt(),
                trials: Some(trials),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessReport {
    pub grid_t: usize,
    pub grid_y: usize,
    pub max_deviation: f64,
    pub budget: f64,
    pub monotone: bool,
    pub passed: bool,
}

/// Grid check of membership in `M_w` for the extremal process.
pub fn verify_process_membership(
    proc: &ExtremalProcess,
    grid_t: usize,
    grid_y: usize,
) -> Result<ProcessReport, ProcessError> {
    verify_process_fn(
        proc.m(),
        |t, y| proc.eval(t, y).expect("grid point in [0,1]²"),
        grid_t,
        grid_y,
        1.0 / proc.tau().len() as f64,
    )
}

/// Grid check for a process given as a closure of `(t, y)`.
///
/// Requires every sampled trajectory to be non-decreasing, then compares the
/// cell-counted `μ×P{ξ ≤ m⁻¹(s)}` with `s` for `s = k/max(grid_t, grid_y)`
/// within `2(1/grid_t + 1/grid_y) + resolution`.
pub fn verify_process_fn<F>(
    m: &MonotoneMap1D,
    xi: F,
    grid_t: usize,
    grid_y: usize,
    resolution: f64,
) -> Result<ProcessReport, ProcessError>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    verify_process_constraint(m, xi, grid_t, grid_y, resolution, Constraint::Equality)
}

/// As [`verify_process_fn`]; under [`Constraint::Inequality`] only an excess of
/// `μ×P{ξ ≤ m⁻¹(s)}` over `s` counts as a deviation.
pub fn verify_process_constraint<F>(
    m: &MonotoneMap1D,
    xi: F,
    grid_t: usize,
    grid_y: usize,
    resolution: f64,
    constraint: Constraint,
) -> Result<ProcessReport, ProcessError>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if grid_t < 2 || grid_y < 2 {
        return Err(ProcessError::InvalidGrid(format!(
            "grids {grid_t} × {grid_y} must both be at least 2"
        )));
    }
    let t_at = |i: usize| (i as f64 + 0.5) / grid_t as f64;
    let y_at = |j: usize| (j as f64 + 0.5) / grid_y as f64;
    let rows: Vec<Vec<f64>> = (0..grid_y)
        .into_par_iter()
        .map(|j| (0..grid_t).map(|i| xi(t_at(i), y_at(j))).collect())
        .collect();
    for (j, row) in rows.iter().enumerate() {
        if let Some(i) = row.windows(2).position(|w| w[0] > w[1]) {
            return Err(ProcessError::MembershipViolation(ProcessFailure::NotMonotone {
                y: y_at(j),
                t_lo: t_at(i),
                t_hi: t_at(i + 1),
            }));
        }
    }
    let mut sorted: Vec<f64> = rows.into_iter().flatten().collect();
    sorted.sort_by(f64::total_cmp);
    let cells = sorted.len() as f64;
    let budget = 2.0 * (1.0 / grid_t as f64 + 1.0 / grid_y as f64) + resolution;
    let levels = grid_t.max(grid_y);
    let mut worst: f64 = 0.0;
    for k in 0..=levels {
        let s = k as f64 / levels as f64;
        let level = m.inverse(s)?;
        let measure = sorted.partition_point(|&v| v <= level) as f64 / cells;
        let deviation = match constraint {
            Constraint::Equality => (measure - s).abs(),
            Constraint::Inequality => (measure - s).max(0.0),
        };
        if deviation > budget {
            return Err(ProcessError::MembershipViolation(ProcessFailure::Distribution {
                s,
                measure,
                budget,
            }));
        }
        worst = worst.max(deviation);
    }
    Ok(ProcessReport {
        grid_t,
        grid_y,
        max_deviation: worst,
        budget,
        monotone: true,
        passed: true,
    })
}

/// Nodes `(s_v, v)` of the rows grid: element `s_v` of chain `v`.
pub fn rows_grid_query(poset: &Poset, s: &[usize]) -> Result<QuerySet, ProcessError> {
    let labels: Vec<String> = s.iter().enumerate().map(|(v, &sv)| grid_label(sv, v + 1)).collect();
    Ok(QuerySet::new(poset, &labels)?)
}

/// `min S` on the `n × n` rows grid via the disjoint down-set closed form.
pub fn rows_grid_value<T: Scalar>(n: usize, scale: &ValueScale<T>, s: &[usize]) -> Result<T, ProcessError> {
    let poset = Poset::grid(n, GridOrder::Rows)?;
    let query = rows_grid_query(&poset, s)?;
    Ok(corollary_disjoint_min(&poset, scale, &query)?)
}

/// `Σ_ν m⁻¹((s_1 + .. + s_ν)/n²)` for non-decreasing `s`, in floating point.
pub fn rows_grid_closed_form(m: &MonotoneMap1D, n: usize, s: &[usize]) -> f64 {
    let total = (n * n) as f64;
    let mut acc = 0;
    s.iter()
        .map(|&sv| {
            acc += sv;
            m.inverse(acc as f64 / total).expect("partial sums are at most n²")
        })
        .sum()
}

/// The same sum for `m = id`, exactly.
pub fn rows_grid_closed_form_exact(n: usize, s: &[usize]) -> Rational {
    use num_bigint::BigInt;
    let mut acc = 0;
    let numer: usize = s
        .iter()
        .map(|&sv| {
            acc += sv;
            acc
        })
        .sum();
    Rational::new(BigInt::from(numer), BigInt::from(n * n))
}

/// All non-decreasing vectors over `1..=n` of length `1..=n`.
pub fn nondecreasing_vectors(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == n {
            return;
        }
        let from = cur.last().copied().unwrap_or(1);
        for v in from..=n {
            cur.push(v);
            extend(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut out);
    out
}
