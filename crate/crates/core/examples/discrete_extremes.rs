//! Minimum and maximum of `Σ_{b ∈ B} f(b)` over monotone bijections `f`,
//! with the witnesses that attain them, plus the closed forms for chains and
//! for queries with disjoint down-sets.

use monoext::poset::{GridOrder, Poset, QuerySet};
use monoext::scale::{fraction_string, ValueScale};
use monoext::poset::DEFAULT_CAP;
use monoext::solver::{corollary_chain, corollary_disjoint_min, solve_max, solve_min};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Poset::grid(3, GridOrder::Product)?;
    let scale = ValueScale::integers(grid.len());
    let query = QuerySet::new(&grid, &["(1,3)", "(2,2)", "(3,1)"])?;

    let min = solve_min(&grid, &scale, &query, DEFAULT_CAP)?;
    let max = solve_max(&grid, &scale, &query, DEFAULT_CAP)?;
    println!("anti-diagonal of the 3x3 grid, values 1..9");
    for (name, res) in [("min", &min), ("max", &max)] {
        let order: Vec<&str> = res.witness_perm.iter().map(|&k| grid.label(query.elements()[k])).collect();
        let values: Vec<String> = res.per_node_values.iter().map(fraction_string).collect();
        println!("  {name} = {} with order {order:?} and values {values:?}", fraction_string(&res.objective));
    }

    let column = QuerySet::new(&grid, &["(2,1)", "(2,2)", "(2,3)"])?;
    let (lo, hi) = corollary_chain(&grid, &scale, &column)?;
    println!("middle column (a chain): min = {}, max = {}", fraction_string(&lo), fraction_string(&hi));

    let rows = Poset::grid(3, GridOrder::Rows)?;
    let spread = QuerySet::new(&rows, &["(1,1)", "(2,2)", "(3,3)"])?;
    let value = corollary_disjoint_min(&rows, &scale, &spread)?;
    let check = solve_min(&rows, &scale, &spread, DEFAULT_CAP)?.objective;
    println!("rows grid, disjoint down-sets: closed form {} = search {}", fraction_string(&value), fraction_string(&check));
    Ok(())
}
