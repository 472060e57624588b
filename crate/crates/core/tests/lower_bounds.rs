//! Spot checks that random class members never beat the two continuous bounds.

use monoext::continuous::{
    line_integral, path_crossings, theorem1_bound, verify_surface_membership, Constraint, ExtremalSurface, StaircaseSurface,
};
use monoext::func1d::{EmpiricalRV, MonotoneMap1D, MonotonePath};
use monoext::oracle::random_linear_extension;
use monoext::poset::{GridOrder, Poset};
use monoext::process::{
    jitter_tau, rank_fraction, theorem2_bound, verify_process_constraint, ExtremalProcess,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;

fn maps() -> Vec<MonotoneMap1D> {
    vec![
        MonotoneMap1D::identity(),
        MonotoneMap1D::power(2.0).unwrap(),
        MonotoneMap1D::power(0.5).unwrap(),
        MonotoneMap1D::piecewise_linear(vec![(0.0, 0.0), (0.3, 0.6), (1.0, 1.0)]).unwrap(),
    ]
}

fn random_path<R: Rng>(rng: &mut R) -> MonotonePath {
    let k = rng.gen_range(1..=4);
    let mut xs: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..0.95)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut ys: Vec<f64> = (0..xs.len() + 2).map(|_| rng.gen::<f64>()).collect();
    ys.sort_by(f64::total_cmp);
    let mut points = vec![(0.0, ys[0])];
    points.extend(xs.iter().zip(&ys[1..]).map(|(&x, &y)| (x, y)));
    points.push((1.0, ys[ys.len() - 1]));
    MonotonePath::piecewise_linear(points).unwrap()
}

enum Component {
    Staircase(StaircaseSurface),
    Extremal(ExtremalSurface),
}

impl Component {
    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Component::Staircase(s) => s.eval(x, y),
            Component::Extremal(e) => e.eval(x, y).unwrap(),
        }
    }
}

#[test]
fn line_integrals_of_random_members_respect_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..20 {
        let m = maps()[case % 4].clone();
        let t = random_path(&mut rng);
        let mut parts = Vec::new();
        let mut heights = Vec::new();
        let mut breaks = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            if rng.gen_bool(0.6) {
                let n = rng.gen_range(2..=7);
                let grid = Poset::grid(n, GridOrder::Product).unwrap();
                let ranks = random_linear_extension(&grid, &mut rng);
                let s = StaircaseSurface::new(&m, n, &ranks).unwrap();
                heights.extend(s.edges());
                breaks.extend(s.edges());
                parts.push(Component::Staircase(s));
            } else {
                parts.push(Component::Extremal(ExtremalSurface::new(m.clone(), random_path(&mut rng))));
            }
        }
        let f = |x: f64, y: f64| parts.iter().map(|p| p.eval(x, y)).fold(f64::NEG_INFINITY, f64::max);

        let report = verify_surface_membership(&m, f, 200, Constraint::Inequality)
            .unwrap_or_else(|e| panic!("case {case}: member rejected: {e}"));
        assert!(report.passed);

        breaks.extend(path_crossings(&t, &heights));
        let integral = line_integral(f, &t, &breaks, TOL).unwrap();
        let bound = theorem1_bound(&m, &t, TOL).unwrap();
        assert!(integral >= bound - 1e-6, "case {case}: {integral} < {bound}");
    }
}

#[test]
fn bound_is_monotone_in_the_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sample = |t: &MonotonePath, shift: f64| {
        let points = (0..=20).map(|k| {
            let s = k as f64 / 20.0;
            (s, (t.eval(s).unwrap() + shift).min(1.0))
        });
        MonotonePath::piecewise_linear(points.collect()).unwrap()
    };
    for m in maps() {
        for _ in 0..10 {
            let base = random_path(&mut rng);
            let lo = sample(&base, 0.0);
            let hi = sample(&base, rng.gen_range(0.0..0.3));
            assert!(lo.dominated_by(&hi));
            let a = theorem1_bound(&m, &lo, TOL).unwrap();
            let b = theorem1_bound(&m, &hi, TOL).unwrap();
            assert!(a <= b + 2.0 * TOL, "{a} > {b}");
        }
    }
}

/// A member of `M_w` built as the pointwise maximum of extremal processes for
/// other random times, each read through a measure-preserving shuffle of `y`.
struct MaxProcess {
    parts: Vec<(ExtremalProcess, Vec<usize>)>,
}

impl MaxProcess {
    fn random<R: Rng>(m: &MonotoneMap1D, rng: &mut R) -> Self {
        let parts = (0..rng.gen_range(1..=3))
            .map(|_| {
                let power: f64 = rng.gen_range(0.3..3.0);
                let samples = (0..2000).map(|_| rng.gen::<f64>().powf(power)).collect();
                let tau = EmpiricalRV::new(samples).unwrap();
                let mut blocks: Vec<usize> = (0..rng.gen_range(1..=12)).collect();
                blocks.shuffle(rng);
                (ExtremalProcess::new(m.clone(), &tau).unwrap(), blocks)
            })
            .collect();
        MaxProcess { parts }
    }

    fn eval(&self, t: f64, y: f64) -> f64 {
        self.parts
            .iter()
            .map(|(p, blocks)| {
                let k = blocks.len() as f64;
                let b = ((y * k) as usize).min(blocks.len() - 1);
                let shuffled = ((blocks[b] as f64 + (y * k - b as f64)) / k).clamp(0.0, 1.0);
                p.eval(t, shuffled).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[test]
fn expectations_of_random_members_respect_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    const POINTS: usize = 1 << 20;
    for case in 0..20 {
        let m = maps()[case % 4].clone();
        let tau = EmpiricalRV::new((0..40).map(|_| rng.gen::<f64>()).collect()).unwrap();
        let xi = MaxProcess::random(&m, &mut rng);

        let report = verify_process_constraint(&m, |t, y| xi.eval(t, y), 100, 100, 1.0 / 2000.0, Constraint::Inequality)
            .unwrap_or_else(|e| panic!("case {case}: member rejected: {e}"));
        assert!(report.passed);

        // E ξ_τ with ω addressed by its rank fraction, by the midpoint rule
        let expectation = (0..POINTS)
            .map(|i| {
                let y = (i as f64 + 0.5) / POINTS as f64;
                xi.eval(tau.quantile(y), y)
            })
            .sum::<f64>()
            / POINTS as f64;
        let bound = theorem2_bound(&m, &tau, TOL).unwrap();
        assert!(expectation >= bound - 1e-3, "case {case}: {expectation} < {bound}");
    }
}

#[test]
fn rank_fractions_are_uniform_on_the_atoms() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for size in [1, 2, 5, 40, 333] {
        let tau = EmpiricalRV::new((0..size).map(|_| rng.gen::<f64>()).collect()).unwrap();
        assert!(!tau.has_ties());
        let mut ys: Vec<f64> = tau.samples().iter().map(|&v| rank_fraction(&tau, v)).collect();
        ys.sort_by(f64::total_cmp);
        let expected: Vec<f64> = (1..=size).map(|k| k as f64 / size as f64).collect();
        assert_eq!(ys, expected);
    }
    let tied = EmpiricalRV::new(vec![0.5; 6].into_iter().chain([0.2, 1.0, 1.0]).collect()).unwrap();
    let spread = jitter_tau(&tied, 1e-6).unwrap();
    assert!(!spread.has_ties());
    let ys: Vec<f64> = spread.samples().iter().map(|&v| rank_fraction(&spread, v)).collect();
    assert_eq!(ys, (1..=9).map(|k| k as f64 / 9.0).collect::<Vec<_>>());
}

#[test]
fn constant_time_reduces_to_the_line_integral_bound() {
    for m in maps() {
        for alpha in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            let tau = EmpiricalRV::constant(alpha, 25).unwrap();
            let t = MonotonePath::constant(alpha).unwrap();
            let a = theorem2_bound(&m, &tau, TOL).unwrap();
            let b = theorem1_bound(&m, &t, TOL).unwrap();
            assert!((a - b).abs() <= 2.0 * TOL, "alpha {alpha}: {a} vs {b}");
        }
    }
}
