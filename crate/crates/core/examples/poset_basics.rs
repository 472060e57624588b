//! Build a small poset, inspect its down-sets and up-sets, and count linear extensions.
//!
//! Run with `cargo run --example poset_basics`.

use monoext::poset::{GridOrder, Poset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a diamond: bottom < left, right < top
    let diamond = Poset::new(
        &["bottom", "left", "right", "top"],
        &[("bottom", "left"), ("bottom", "right"), ("left", "top"), ("right", "top")],
    )?;
    for label in diamond.labels() {
        let a = diamond.index_of(label)?;
        let down: Vec<&str> = diamond.down_set(a).iter().map(|b| diamond.label(b)).collect();
        let up: Vec<&str> = diamond.up_set(a).iter().map(|b| diamond.label(b)).collect();
        println!("{label:>6}: down = {down:?}, up = {up:?}");
    }
    println!("linear extensions of the diamond: {:?}", diamond.count_linear_extensions());

    for order in [GridOrder::Product, GridOrder::Rows] {
        let grid = Poset::grid(3, order)?;
        println!(
            "3x3 grid ({order:?}): {} elements, {} cover pairs, {:?} linear extensions",
            grid.len(),
            grid.covers().len(),
            grid.count_linear_extensions()
        );
    }

    let cyclic = Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]);
    println!("a 2-cycle is rejected: {}", cyclic.unwrap_err());
    Ok(())
}
