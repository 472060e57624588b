use super::{check_unit, Func1dError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    NonIncreasing,
    NonDecreasing,
    General,
}

/// A step function on `[0, 1]` with left-closed pieces `[x_i, x_{i+1})`
/// (the last piece also contains 1) and values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction1D {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    shape: Shape,
}

impl StepFunction1D {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, Func1dError> {
        let bad = |m: &str| Err(Func1dError::InvalidStep(m.to_owned()));
        if values.is_empty() || breakpoints.len() != values.len() + 1 {
            return bad("need one more breakpoint than values");
        }
        if breakpoints[0] != 0.0 || breakpoints[breakpoints.len() - 1] != 1.0 {
            return bad("breakpoints must run from 0 to 1");
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("breakpoints must be strictly increasing");
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("values must lie in [0, 1]");
        }
        let shape = if values.windows(2).all(|w| w[0] >= w[1]) {
            Shape::NonIncreasing
        } else if values.windows(2).all(|w| w[0] <= w[1]) {
            Shape::NonDecreasing
        } else {
            Shape::General
        };
        Ok(StepFunction1D {
            breakpoints,
            values,
            shape,
        })
    }

    pub fn constant(c: f64) -> Result<Self, Func1dError> {
        Self::new(vec![0.0, 1.0], vec![c])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `(left, right, value)` for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[0], w[1], v))
    }

    pub fn eval(&self, x: f64) -> Result<f64, Func1dError> {
        let x = check_unit(x)?;
        let i = self.breakpoints.partition_point(|&b| b <= x);
        Ok(self.values[(i.max(1) - 1).min(self.values.len() - 1)])
    }

    /// `∫_0^1`, summed piece by piece.
    pub fn integral(&self) -> f64 {
        self.pieces().map(|(a, b, v)| v * (b - a)).sum()
    }

    /// `∫_lo^hi` for `0 ≤ lo ≤ hi ≤ 1`, exact up to rounding.
    pub fn integral_over(&self, lo: f64, hi: f64) -> f64 {
        self.pieces()
            .map(|(a, b, v)| {
                let (l, r) = (a.max(lo), b.min(hi));
                if r > l {
                    v * (r - l)
                } else {
                    0.0
                }
            })
            .sum()
    }

    fn merged(&self) -> StepFunction1D {
        let mut bps = vec![0.0];
        let mut vals: Vec<f64> = Vec::new();
        for (_, b, v) in self.pieces() {
            if vals.last() == Some(&v) {
                *bps.last_mut().expect("nonempty") = b;
            } else {
                vals.push(v);
                bps.push(b);
            }
        }
        StepFunction1D::new(bps, vals).expect("merging keeps the invariants")
    }

    /// Distinct values in decreasing order with their cumulative masses;
    /// the last mass is pinned to exactly 1.
    fn cumulative_masses(&self) -> Vec<(f64, f64)> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&i, &j| self.values[j].total_cmp(&self.values[i]).then(i.cmp(&j)));
        let mut out: Vec<(f64, f64)> = Vec::new();
        let mut acc = 0.0;
        for i in order {
            let width = self.breakpoints[i + 1] - self.breakpoints[i];
            acc += width;
            match out.last_mut() {
                Some(last) if last.0 == self.values[i] => last.1 = acc,
                _ => out.push((self.values[i], acc)),
            }
        }
        if let Some(last) = out.last_mut() {
            last.1 = 1.0;
        }
        out
    }
}

/// Builds `m_f` from ascending distinct values `w_j` and `G_j = μ{f > w_j}`.
/// Below the smallest value the whole unit mass lies above `t`.
fn distribution_from_levels(levels: &[(f64, f64)]) -> StepFunction1D {
    let mut starts: Vec<(f64, f64)> = Vec::new();
    if levels.first().is_none_or(|l| l.0 > 0.0) {
        starts.push((0.0, 1.0));
    }
    starts.extend(levels.iter().copied().filter(|l| l.0 < 1.0));
    let mut bps: Vec<f64> = starts.iter().map(|s| s.0).collect();
    bps.push(1.0);
    let vals = starts.iter().map(|s| s.1).collect();
    StepFunction1D::new(bps, vals).expect("levels produce a valid non-increasing step")
}

/// A random variable on `[0,1]` given by `M` equally weighted samples, kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalRV {
    samples: Vec<f64>,
    prefix: Vec<f64>,
}

impl EmpiricalRV {
    pub fn new(mut samples: Vec<f64>) -> Result<Self, Func1dError> {
        if samples.is_empty() {
            return Err(Func1dError::EmptySamples);
        }
        if let Some(&bad) = samples.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Func1dError::SampleOutOfRange(bad));
        }
        samples.sort_by(f64::total_cmp);
        let mut prefix = Vec::with_capacity(samples.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &x in &samples {
            acc += x;
            prefix.push(acc);
        }
        Ok(EmpiricalRV { samples, prefix })
    }

    /// Midpoints `(i + ½)/M`: the uniform distribution at resolution `1/M`.
    pub fn uniform_grid(m: usize) -> Result<Self, Func1dError> {
        Self::new((0..m).map(|i| (i as f64 + 0.5) / m as f64).collect())
    }

    pub fn constant(value: f64, m: usize) -> Result<Self, Func1dError> {
        Self::new(vec![value; m])
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sorted ascending.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn mean(&self) -> f64 {
        self.prefix[self.len()] / self.len() as f64
    }

    pub fn has_ties(&self) -> bool {
        self.samples.windows(2).any(|w| w[0] == w[1])
    }

    /// `r_τ(1 − y)`: the sample at rank fraction `y`, i.e. the `⌈yM⌉`-th smallest.
    pub fn quantile(&self, y: f64) -> f64 {
        let m = self.len() as f64;
        // Snap so that y = i/M computed in floating point maps to sample i.
        let k = (y * m - 1e-9 * m).ceil().clamp(1.0, m) as usize;
        self.samples[k - 1]
    }

    /// `∫_{1−y}^1 r_τ(s) ds`: the mass-weighted sum of the smallest `yM` samples.
    pub fn lower_tail_integral(&self, y: f64) -> f64 {
        let m = self.len();
        let pos = (y.clamp(0.0, 1.0) * m as f64).min(m as f64);
        let j = ((pos + 1e-9 * m as f64).floor() as usize).min(m);
        let partial = if j < m { (pos - j as f64) * self.samples[j] } else { 0.0 };
        (self.prefix[j] + partial) / m as f64
    }

    /// Rank-fraction breakpoints `i/M`, where the tail integral has kinks.
    pub fn rank_breakpoints(&self) -> Vec<f64> {
        let m = self.len();
        (0..=m).map(|i| i as f64 / m as f64).collect()
    }
}

/// Objects with a distribution function `m_f(t) = μ{f > t}` on `t ∈ [0,1]` and
/// a non-increasing rearrangement `r_f(s) = inf{t : m_f(t) ≤ s}`.
///
/// For these finite representations `m_{r_f} = m_f` holds bit for bit.
pub trait Rearrangeable {
    fn distribution_function(&self) -> StepFunction1D;
    fn rearrangement(&self) -> StepFunction1D;
}

impl Rearrangeable for EmpiricalRV {
    fn distribution_function(&self) -> StepFunction1D {
        let m = self.len();
        let mut levels = Vec::new();
        let mut i = 0;
        while i < m {
            let v = self.samples[i];
            while i < m && self.samples[i] == v {
                i += 1;
            }
            levels.push((v, (m - i) as f64 / m as f64));
        }
        distribution_from_levels(&levels)
    }

    fn rearrangement(&self) -> StepFunction1D {
        let m = self.len();
        let bps = (0..=m).map(|i| i as f64 / m as f64).collect();
        let vals = self.samples.iter().rev().copied().collect();
        StepFunction1D::new(bps, vals).expect("sorted samples give a valid step")
    }
}

impl Rearrangeable for StepFunction1D {
    fn distribution_function(&self) -> StepFunction1D {
        let mut distinct: Vec<f64> = self.values.clone();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let levels: Vec<(f64, f64)> = if self.shape == Shape::NonIncreasing {
            // {f > t} = [0, right end of the last piece above t).
            distinct
                .iter()
                .map(|&w| {
                    let above = self.values.iter().take_while(|&&v| v > w).count();
                    (w, self.breakpoints[above])
                })
                .collect()
        } else {
            let masses = self.cumulative_masses();
            distinct
                .iter()
                .map(|&w| {
                    let above = masses.iter().take_while(|c| c.0 > w).count();
                    (w, if above == 0 { 0.0 } else { masses[above - 1].1 })
                })
                .collect()
        };
        distribution_from_levels(&levels)
    }

    fn rearrangement(&self) -> StepFunction1D {
        if self.shape == Shape::NonIncreasing {
            return self.merged();
        }
        let masses = self.cumulative_masses();
        let mut bps = vec![0.0];
        bps.extend(masses.iter().map(|c| c.1));
        let vals = masses.iter().map(|c| c.0).collect();
        StepFunction1D::new(bps, vals).expect("cumulative masses are increasing")
    }
}

pub fn distribution_function<F: Rearrangeable + ?Sized>(f: &F) -> StepFunction1D {
    f.distribution_function()
}

pub fn rearrangement<F: Rearrangeable + ?Sized>(f: &F) -> StepFunction1D {
    f.rearrangement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_distribution() {
        let f = StepFunction1D::constant(0.4).unwrap();
        let m = f.distribution_function();
        assert_eq!(m.eval(0.39).unwrap(), 1.0);
        assert_eq!(m.eval(0.4).unwrap(), 0.0);
        assert_eq!(m.eval(0.9).unwrap(), 0.0);
        let tau = EmpiricalRV::constant(0.4, 3).unwrap();
        assert_eq!(tau.distribution_function(), m);
        let r = tau.rearrangement();
        assert_eq!(r.eval(0.0).unwrap(), 0.4);
        assert_eq!(r.eval(0.99).unwrap(), 0.4);
    }

    #[test]
    fn two_point_samples() {
        let tau = EmpiricalRV::new(vec![0.8, 0.2]).unwrap();
        assert_eq!(tau.distribution_function().eval(0.5).unwrap(), 0.5);
        let r = tau.rearrangement();
        assert_eq!(r.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(r.values(), &[0.8, 0.2]);
    }

    #[test]
    fn uniform_distribution_and_rearrangement() {
        let m = 10_000;
        let tau = EmpiricalRV::uniform_grid(m).unwrap();
        let dist = tau.distribution_function();
        let r = tau.rearrangement();
        let mut worst_dist: f64 = 0.0;
        let mut worst_r: f64 = 0.0;
        for i in 0..=1000 {
            let t = i as f64 / 1000.0;
            worst_dist = worst_dist.max((dist.eval(t).unwrap() - (1.0 - t)).abs());
            worst_r = worst_r.max((r.eval(t).unwrap() - (1.0 - t)).abs());
        }
        assert!(worst_dist <= 1e-3, "{worst_dist}");
        assert!(worst_r <= 1e-3, "{worst_r}");
    }

    #[test]
    fn step_of_uniform_is_exact() {
        // f(x) = piece midpoint on 100 pieces; μ{f > t} is the mass of pieces above t.
        let k = 100;
        let bps: Vec<f64> = (0..=k).map(|i| i as f64 / k as f64).collect();
        let vals: Vec<f64> = (0..k).map(|i| (i as f64 + 0.5) / k as f64).collect();
        let f = StepFunction1D::new(bps, vals).unwrap();
        assert_eq!(f.shape(), Shape::NonDecreasing);
        let m = f.distribution_function();
        for i in 0..k {
            let t = (i as f64 + 0.5) / k as f64;
            let expected = (k - i - 1) as f64 / k as f64;
            assert!((m.eval(t).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn integrals() {
        let f = StepFunction1D::new(vec![0.0, 0.25, 1.0], vec![1.0, 0.5]).unwrap();
        assert_eq!(f.integral(), 0.625);
        assert_eq!(f.integral_over(0.0, 0.5), 0.375);
        let tau = EmpiricalRV::new(vec![0.1, 0.3, 0.35, 0.9]).unwrap();
        assert!((tau.rearrangement().integral() - tau.mean()).abs() < 1e-15);
    }

    #[test]
    fn rank_fraction_lookups() {
        let tau = EmpiricalRV::new(vec![0.2, 0.8]).unwrap();
        assert_eq!(tau.quantile(0.5), 0.2);
        assert_eq!(tau.quantile(0.51), 0.8);
        assert_eq!(tau.quantile(1.0), 0.8);
        assert_eq!(tau.lower_tail_integral(0.5), 0.1);
        assert_eq!(tau.lower_tail_integral(1.0), 0.5);
        assert!((tau.lower_tail_integral(0.75) - 0.3).abs() < 1e-15);
        let u = EmpiricalRV::uniform_grid(1000).unwrap();
        for i in 1..=1000 {
            assert_eq!(u.quantile(i as f64 / 1000.0), u.samples()[i - 1]);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(EmpiricalRV::new(vec![]).is_err());
        assert!(EmpiricalRV::new(vec![1.2]).is_err());
        assert!(StepFunction1D::new(vec![0.0, 0.5], vec![0.1]).is_err());
        assert!(StepFunction1D::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.1, 0.2, 0.3]).is_err());
    }

    proptest! {
        #[test]
        fn equimeasurable_samples(samples in prop::collection::vec(0u32..=20, 1..40)) {
            let tau = EmpiricalRV::new(samples.iter().map(|&s| s as f64 / 20.0).collect()).unwrap();
            let r = tau.rearrangement();
            prop_assert_eq!(r.shape(), Shape::NonIncreasing);
            prop_assert_eq!(r.distribution_function(), tau.distribution_function());
            prop_assert_eq!(r.rearrangement().distribution_function(), tau.distribution_function());
            prop_assert!(tau.distribution_function().shape() == Shape::NonIncreasing);
        }

        #[test]
        fn equimeasurable_steps(raw in prop::collection::vec((1u32..10, 0u32..=8), 1..12)) {
            let total: u32 = raw.iter().map(|p| p.0).sum();
            let mut bps = vec![0.0];
            let mut acc = 0;
            for (w, _) in &raw {
                acc += w;
                bps.push(if acc == total { 1.0 } else { acc as f64 / total as f64 });
            }
            let vals: Vec<f64> = raw.iter().map(|p| p.1 as f64 / 8.0).collect();
            let f = StepFunction1D::new(bps, vals).unwrap();
            let r = f.rearrangement();
            prop_assert_eq!(r.shape(), Shape::NonIncreasing);
            prop_assert_eq!(r.distribution_function(), f.distribution_function());
            let m = f.distribution_function();
            prop_assert!(m.values().iter().all(|v| (0.0..=1.0).contains(v)));
            prop_assert!((r.integral() - f.integral()).abs() < 1e-12);
        }
    }
}
