//! Distribution functions and non-increasing rearrangements of step functions
//! and empirical samples; the two share a distribution exactly.

use monoext::func1d::{distribution_function, rearrangement, EmpiricalRV, StepFunction1D};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = StepFunction1D::new(vec![0.0, 0.2, 0.5, 0.7, 1.0], vec![0.3, 0.9, 0.1, 0.6])?;
    let r = rearrangement(&f);
    println!("f pieces:");
    for (a, b, v) in f.pieces() {
        println!("  [{a}, {b}) -> {v}");
    }
    println!("rearrangement pieces:");
    for (a, b, v) in r.pieces() {
        println!("  [{a}, {b}) -> {v}");
    }
    assert_eq!(distribution_function(&f), distribution_function(&r));
    println!("integrals: {} and {}", f.integral(), r.integral());

    let tau = EmpiricalRV::new(vec![0.2, 0.8, 0.5, 0.5])?;
    println!("samples {:?}, mean {}", tau.samples(), tau.mean());
    for y in [0.25, 0.5, 0.75, 1.0] {
        println!("  quantile({y}) = {}, ∫_(1-y)^1 r = {}", tau.quantile(y), tau.lower_tail_integral(y));
    }
    println!("distribution function of tau: {:?}", distribution_function(&tau).values());
    Ok(())
}
