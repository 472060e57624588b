//! The lower bound for `E ξ_τ` over processes with non-decreasing trajectories,
//! its simplified form for `m = id`, and the extremal process evaluated by
//! quadrature.

use monoext::func1d::{EmpiricalRV, MonotoneMap1D, DEFAULT_TOL};
use monoext::process::{
    expectation_at_tau, simplified_bound, theorem2_bound, verify_process_membership, ExpectationMode,
    ExtremalProcess,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tau = EmpiricalRV::new(vec![0.05, 0.2, 0.35, 0.6, 0.6, 0.9])?;
    let m = MonotoneMap1D::identity();
    println!("bound {:.10}", theorem2_bound(&m, &tau, DEFAULT_TOL)?);
    println!("simplified {:.10}", simplified_bound(&tau));

    let process = ExtremalProcess::new(m, &tau)?;
    println!("jittered times: {:?}", process.tau().samples());
    let e = expectation_at_tau(&process, ExpectationMode::Quadrature { tol: DEFAULT_TOL })?;
    println!("E ξ*_τ by quadrature {:.10}", e.value);

    let report = verify_process_membership(&process, 120, 120)?;
    println!("membership: deviation {:.3e} within {:.3e}", report.max_deviation, report.budget);

    let y = 0.5;
    let at = process.threshold(y);
    println!(
        "trajectory y = {y}: {:.4} before t = {at:.4}, {:.4} after",
        process.lower_value(y),
        process.upper_value(y)
    );
    Ok(())
}
