//! Seeded Monte Carlo estimate of `E ξ*_τ`. The result depends only on the seed,
//! not on thread scheduling.

use monoext::func1d::{EmpiricalRV, MonotoneMap1D, DEFAULT_TOL};
use monoext::process::{expectation_at_tau, theorem2_bound, ExpectationMode, ExtremalProcess};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: Vec<f64> = (0..500).map(|i| ((i as f64 + 0.5) / 500.0).powi(2)).collect();
    let tau = EmpiricalRV::new(samples)?;
    let m = MonotoneMap1D::power(0.5)?;
    let process = ExtremalProcess::new(m.clone(), &tau)?;

    let bound = theorem2_bound(&m, &tau, DEFAULT_TOL)?;
    println!("bound {bound:.6}");
    for trials in [1_000, 10_000, 100_000] {
        let mode = ExpectationMode::MonteCarlo { trials, seed: 42 };
        let a = expectation_at_tau(&process, mode)?;
        let b = expectation_at_tau(&process, mode)?;
        assert_eq!(a, b);
        println!(
            "{trials:>7} trials: {:.6} ± {:.6} ({:+.2} standard errors)",
            a.value,
            a.stderr,
            (a.value - bound) / a.stderr
        );
    }
    Ok(())
}
