//! Discretize the square into an `n × n` grid for `m = id`, `t ≡ α` and watch
//! the per-column sum converge to `α/2` at rate `C/n`.

use monoext::continuous::grid_experiment;
use monoext::scale::fraction_string;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 0.3;
    println!("{:>5} {:>7} {:>12} {:>12} {:>10} {:>8}", "n", "column", "bound", "sum", "error", "C");
    for n in [10, 20, 40, 80, 160] {
        let rec = grid_experiment(alpha, n, 1)?;
        assert!(rec.phi_is_monotone && rec.discrete_bound == rec.corollary_value);
        println!(
            "{n:>5} {:>7} {:>12} {:>12.8} {:>10.2e} {:>8.4}",
            rec.column,
            fraction_string(&rec.discrete_bound),
            rec.discrete_sum,
            rec.error,
            rec.c
        );
    }
    Ok(())
}
