//! The line-integral lower bound over the class `M` of coordinate-wise
//! non-decreasing surfaces `f: [0,1]² → [0,1]` with `μ{f > t} ≥ 1 − m(t)`.
//!
//! For a non-decreasing path `t` the sharp bound is
//!
//! ```text
//! ∫_0^1 f(t(s), s) ds  ≥  ∫_0^1 m⁻¹(t(s)·s) ds,
//! ```
//!
//! attained by [`ExtremalSurface`]. The surface is constant on the regions
//! `Π_s = [0,t(s)]×[0,s] ∖ ∪_{u<s} [0,t(u)]×[0,u]`, and each point is assigned
//! to its region by bisection on `s` rather than by building the regions.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::func1d::{integrate_pieces, Func1dError, MonotoneMap1D, MonotonePath};
use crate::oracle::check_monotone_bijection;
use crate::poset::{grid_label, GridOrder, Poset, PosetError, QuerySet};
use crate::scale::{MonotoneBijection, Rational, ValueScale};
use crate::solver::{corollary_chain, SolveError};

/// Bisection tolerance for the region index.
pub const REGION_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuousError {
    #[error(transparent)]
    Func(#[from] Func1dError),
    #[error("membership violated: {0}")]
    MembershipViolation(MembershipFailure),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The witnessing points of a failed membership check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MembershipFailure {
    /// `f(lower) > f(upper)` although `lower ≤ upper` coordinate-wise.
    NotMonotone {
        lower: (f64, f64),
        upper: (f64, f64),
        lower_value: f64,
        upper_value: f64,
    },
    /// The cell-counted level-set measure at `u` misses `1 − u` by more than the budget.
    Distribution {
        u: f64,
        measure: f64,
        expected: f64,
        budget: f64,
    },
}

impl std::fmt::Display for MembershipFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MembershipFailure::NotMonotone {
                lower,
                upper,
                lower_value,
                upper_value,
            } => write!(
                f,
                "f{lower:?} = {lower_value} exceeds f{upper:?} = {upper_value}"
            ),
            MembershipFailure::Distribution {
                u,
                measure,
                expected,
                budget,
            } => write!(
                f,
                "level set measure {measure} at u = {u} is off from {expected} by more than {budget}"
            ),
        }
    }
}

/// Whether the distribution constraint is checked as `= 1 − u` or `≥ 1 − u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Equality,
    Inequality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub grid_n: usize,
    /// Largest `|measure − (1 − u)|` (equality) or shortfall (inequality) over the `u` grid.
    pub max_distribution_deviation: f64,
    pub budget: f64,
    pub monotone: bool,
    pub passed: bool,
}

/// The extremal surface for the pair `(m, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSurface {
    m: MonotoneMap1D,
    t: MonotonePath,
    t_end: f64,
}

impl ExtremalSurface {
    pub fn new(m: MonotoneMap1D, t: MonotonePath) -> Self {
        let t_end = t.eval(1.0).expect("1 is in the domain");
        ExtremalSurface { m, t, t_end }
    }

    pub fn m(&self) -> &MonotoneMap1D {
        &self.m
    }

    pub fn t(&self) -> &MonotonePath {
        &self.t
    }

    /// The minimal `s` with `x ≤ t(s)` and `y ≤ s`, or `None` when `x > t(1)`.
    pub fn region_index(&self, x: f64, y: f64) -> Result<Option<f64>, ContinuousError> {
        crate::func1d::check_unit(x)?;
        crate::func1d::check_unit(y)?;
        if x > self.t_end {
            return Ok(None);
        }
        let t = |s: f64| self.t.eval(s).expect("s in [0,1]");
        let s_x = if t(0.0) >= x {
            0.0
        } else {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            while hi - lo > REGION_TOL {
                let mid = 0.5 * (lo + hi);
                if t(mid) >= x {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        };
        Ok(Some(s_x.max(y)))
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64, ContinuousError> {
        let level = match self.region_index(x, y)? {
            Some(s) => self.t.eval(s)? * s,
            None => self.t_end + (1.0 - self.t_end) * y,
        };
        Ok(self.m.inverse(level.clamp(0.0, 1.0))?)
    }
}

fn path_breaks(t: &MonotonePath) -> Vec<f64> {
    t.kinks()
}

/// `∫_0^1 m⁻¹(t(s)·s) ds`.
pub fn theorem1_bound(m: &MonotoneMap1D, t: &MonotonePath, tol: f64) -> Result<f64, ContinuousError> {
    let g = |s: f64| {
        let level = (t.eval(s).expect("s in [0,1]") * s).clamp(0.0, 1.0);
        m.inverse(level).expect("level in [0,1]")
    };
    Ok(integrate_pieces(g, 0.0, 1.0, &path_breaks(t), tol)?)
}

/// `∫_0^1 f(t(s), s) ds` for a surface given as a closure.
pub fn line_integral<F>(f: F, t: &MonotonePath, breaks: &[f64], tol: f64) -> Result<f64, ContinuousError>
where
    F: Fn(f64, f64) -> f64,
{
    let mut all = path_breaks(t);
    all.extend_from_slice(breaks);
    let g = |s: f64| f(t.eval(s).expect("s in [0,1]"), s);
    Ok(integrate_pieces(g, 0.0, 1.0, &all, tol)?)
}

/// `∫_0^1 f*(t(s), s) ds` on the extremal surface; equals [`theorem1_bound`].
pub fn line_integral_on_surface(
    m: &MonotoneMap1D,
    t: &MonotonePath,
    tol: f64,
) -> Result<f64, ContinuousError> {
    let surface = ExtremalSurface::new(m.clone(), t.clone());
    line_integral(|x, y| surface.eval(x, y).expect("point in the square"), t, &[], tol)
}

/// Grid check of membership in `M` for the extremal surface of `(m, t)`, with
/// the equality `μ{f > m⁻¹(u)} = 1 − u`.
pub fn verify_membership(
    m: &MonotoneMap1D,
    t: &MonotonePath,
    grid_n: usize,
) -> Result<MembershipReport, ContinuousError> {
    let surface = ExtremalSurface::new(m.clone(), t.clone());
    verify_surface_membership(
        m,
        |x, y| surface.eval(x, y).expect("point in the square"),
        grid_n,
        Constraint::Equality,
    )
}

/// Grid check for an arbitrary surface.
///
/// Evaluates `f` at the `grid_n²` cell centres, requires every value to be at
/// most its right and upper neighbours, then counts cells above `m⁻¹(u)` for
/// `u = k/grid_n` and compares with `1 − u` within `2/grid_n + 1e-9`.
pub fn verify_surface_membership<F>(
    m: &MonotoneMap1D,
    f: F,
    grid_n: usize,
    constraint: Constraint,
) -> Result<MembershipReport, ContinuousError>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if grid_n < 2 {
        return Err(ContinuousError::InvalidGrid(format!("grid_n = {grid_n} must be at least 2")));
    }
    let n = grid_n;
    let centre = |i: usize| (i as f64 + 0.5) / n as f64;
    // values[i * n + j] = f(x_i, y_j)
    let values: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| f(centre(k / n), centre(k % n)))
        .collect();

    for i in 0..n {
        for j in 0..n {
            let v = values[i * n + j];
            let neighbours = [(i + 1, j), (i, j + 1)];
            for (a, b) in neighbours {
                if a < n && b < n && v > values[a * n + b] {
                    return Err(ContinuousError::MembershipViolation(MembershipFailure::NotMonotone {
                        lower: (centre(i), centre(j)),
                        upper: (centre(a), centre(b)),
                        lower_value: v,
                        upper_value: values[a * n + b],
                    }));
                }
            }
        }
    }

    let mut sorted = values;
    sorted.sort_by(f64::total_cmp);
    let cells = sorted.len() as f64;
    let budget = 2.0 / n as f64 + 1e-9;
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let u = k as f64 / n as f64;
        let level = m.inverse(u)?;
        let above = sorted.len() - sorted.partition_point(|&v| v <= level);
        let measure = above as f64 / cells;
        let expected = 1.0 - u;
        let deviation = match constraint {
            Constraint::Equality => (measure - expected).abs(),
            Constraint::Inequality => (expected - measure).max(0.0),
        };
        if deviation > budget {
            return Err(ContinuousError::MembershipViolation(MembershipFailure::Distribution {
                u,
                measure,
                expected,
                budget,
            }));
        }
        worst = worst.max(deviation);
    }
    Ok(MembershipReport {
        grid_n: n,
        max_distribution_deviation: worst,
        budget,
        monotone: true,
        passed: true,
    })
}

/// A surface that is constant on the cells of an `n × n` grid, with value
/// `m⁻¹(rank/n²)` where the ranks come from a linear extension of the product
/// order on the cells. Such a surface lies in `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct StaircaseSurface {
    n: usize,
    /// `values[i * n + j]` for the cell in column `i`, row `j` (0-based).
    values: Vec<f64>,
}

impl StaircaseSurface {
    /// `ranks` is a monotone bijection on `Poset::grid(n, Product)`.
    pub fn new(m: &MonotoneMap1D, n: usize, ranks: &MonotoneBijection) -> Result<Self, ContinuousError> {
        let total = (n * n) as f64;
        let values = ranks
            .ranks()
            .iter()
            .map(|&r| m.inverse((r + 1) as f64 / total))
            .collect::<Result<_, _>>()?;
        Ok(StaircaseSurface { n, values })
    }

    fn cell(&self, z: f64) -> usize {
        ((z * self.n as f64) as usize).min(self.n - 1)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.values[self.cell(x) * self.n + self.cell(y)]
    }

    /// Cell edges `k/n`, where the surface may jump.
    pub fn edges(&self) -> Vec<f64> {
        (1..self.n).map(|k| k as f64 / self.n as f64).collect()
    }
}

/// Parameters at which a path `t` crosses the given heights, for use as
/// quadrature breakpoints.
pub fn path_crossings(t: &MonotonePath, heights: &[f64]) -> Vec<f64> {
    heights
        .iter()
        .map(|&h| crate::func1d::bisect_inverse(|s| t.eval(s).expect("s in [0,1]"), h, 1e-13))
        .collect()
}

/// One row of the grid-discretization experiment for `m = id`, `t ≡ α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRecord {
    pub alpha: f64,
    pub n: usize,
    pub k: usize,
    /// Column `s = ⌈αn⌉` containing `x = α`.
    pub column: usize,
    /// `Σ_v φ_n(s, v) / n²` evaluated from the constructed function, exactly.
    #[serde(serialize_with = "serialize_fraction")]
    pub column_sum: Rational,
    /// `s(n+1)/(2n)`.
    #[serde(serialize_with = "serialize_fraction")]
    pub discrete_bound: Rational,
    /// The chain closed form on the product grid with the uniform scale.
    #[serde(serialize_with = "serialize_fraction")]
    pub corollary_value: Rational,
    /// Whether `φ_n` is a monotone bijection of the grid.
    pub phi_is_monotone: bool,
    /// `column_sum / n`, the per-unit value approximating `∫ f(α, y) dy`.
    pub discrete_sum: f64,
    pub target: f64,
    pub error: f64,
    /// `n · error`, so that `error = C/n`.
    pub c: f64,
}

fn serialize_fraction<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::scale::fraction_string(r))
}

/// The discretized minimizer `φ_n` on the `n × n` grid: with `s = ⌈αn⌉`, the
/// first `s` columns receive `1, .., sn` row by row, the remaining columns
/// receive `sn + 1, .., n²` row by row. Returns 0-based ranks per element of
/// `Poset::grid(n, _)`.
pub fn phi_ranks(n: usize, s: usize) -> Vec<usize> {
    let mut ranks = vec![0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            let value = if i <= s {
                (j - 1) * s + i
            } else {
                s * n + (j - 1) * (n - s) + (i - s)
            };
            ranks[(i - 1) * n + (j - 1)] = value - 1;
        }
    }
    ranks
}

/// The column `s = ⌈αn⌉`, with a small allowance for `αn` computed in floating point.
pub fn alpha_column(alpha: f64, n: usize) -> usize {
    ((alpha * n as f64 - 1e-9).ceil() as usize).clamp(1, n)
}

pub fn grid_experiment(alpha: f64, n: usize, k: usize) -> Result<GridRecord, ContinuousError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ContinuousError::InvalidGrid(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    if n < 2 {
        return Err(ContinuousError::InvalidGrid(format!("n = {n} must be at least 2")));
    }
    if k == 0 || n % k != 0 {
        return Err(ContinuousError::InvalidGrid(format!("k = {k} must divide n = {n}")));
    }
    let s = alpha_column(alpha, n);
    let poset = Poset::grid(n, GridOrder::Product)?;
    let phi = MonotoneBijection::from_ranks(phi_ranks(n, s));
    let phi_is_monotone = check_monotone_bijection(&poset, &phi).is_ok();

    let n2 = BigInt::from(n * n);
    let column_total: usize = (1..=n).map(|j| phi.rank((s - 1) * n + (j - 1)) + 1).sum();
    let column_sum = Rational::new(BigInt::from(column_total), n2);
    let discrete_bound = Rational::new(BigInt::from(s * (n + 1)), BigInt::from(2 * n));

    let labels: Vec<String> = (1..=n).map(|j| grid_label(s, j)).collect();
    let query = QuerySet::new(&poset, &labels)?;
    let (corollary_value, _) = corollary_chain(&poset, &ValueScale::uniform_grid(n), &query)?;

    let discrete_sum = crate::scale::rational_to_f64(&column_sum) / n as f64;
    let target = alpha / 2.0;
    let error = (discrete_sum - target).abs();
    Ok(GridRecord {
        alpha,
        n,
        k,
        column: s,
        column_sum,
        discrete_bound,
        corollary_value,
        phi_is_monotone,
        discrete_sum,
        target,
        error,
        c: n as f64 * error,
    })
}
