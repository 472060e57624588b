//! The sharp lower bound for `∫_0^1 f(t(s), s) ds` over coordinate-wise
//! monotone `f` with a prescribed distribution, and the surface attaining it.

use monoext::continuous::{line_integral_on_surface, theorem1_bound, verify_membership, ExtremalSurface};
use monoext::func1d::{MonotoneMap1D, MonotonePath, DEFAULT_TOL};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = MonotoneMap1D::power(2.0)?;
    let t = MonotonePath::piecewise_linear(vec![(0.0, 0.1), (0.5, 0.3), (1.0, 0.9)])?;

    let bound = theorem1_bound(&m, &t, DEFAULT_TOL)?;
    let attained = line_integral_on_surface(&m, &t, DEFAULT_TOL)?;
    println!("bound {bound:.10}, integral on the extremal surface {attained:.10}");

    let report = verify_membership(&m, &t, 200)?;
    println!(
        "membership on a 200x200 grid: deviation {:.2e} within budget {:.2e}",
        report.max_distribution_deviation, report.budget
    );

    let surface = ExtremalSurface::new(m, t);
    for (x, y) in [(0.05, 0.1), (0.2, 0.5), (0.95, 0.5), (1.0, 1.0)] {
        println!("  f*({x}, {y}) = {:.6}", surface.eval(x, y)?);
    }
    Ok(())
}
