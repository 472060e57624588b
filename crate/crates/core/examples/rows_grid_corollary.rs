//! The discrete case behind the random-time bound: on the rows grid (independent
//! chains) with query nodes `(s_v, v)`, the minimum equals
//! `Σ_ν m⁻¹((s_1 + … + s_ν)/n²)` for non-decreasing `s`.

use monoext::func1d::MonotoneMap1D;
use monoext::process::{nondecreasing_vectors, rows_grid_closed_form, rows_grid_closed_form_exact, rows_grid_value};
use monoext::scale::{fraction_string, ValueScale};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let exact = ValueScale::uniform_grid(n);
    let m = MonotoneMap1D::power(2.0)?;
    let float = ValueScale::from_m(&m, n)?;
    for s in nondecreasing_vectors(n).into_iter().filter(|s| s.len() == n) {
        let solved = rows_grid_value(n, &exact, &s)?;
        assert_eq!(solved, rows_grid_closed_form_exact(n, &s));
        let solved_m = rows_grid_value(n, &float, &s)?;
        let closed_m = rows_grid_closed_form(&m, n, &s);
        println!(
            "s = {s:?}: id -> {:>6}, m = x² -> {solved_m:.6} (closed form {closed_m:.6})",
            fraction_string(&solved)
        );
    }
    Ok(())
}
