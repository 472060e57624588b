//! Extremal values of `Σ_{β∈B} f(β)` over monotone bijections `f` from a finite
//! poset onto a fixed increasing scale, and the two continuous bounds that this
//! discrete problem approximates: a line-integral bound for monotone surfaces on
//! the unit square and an expectation bound for monotone processes stopped at a
//! random time.
//!
//! * [`poset`], [`scale`], [`solver`] and [`oracle`] cover the discrete problem.
//! * [`func1d`] holds one-dimensional maps, step functions and quadrature.
//! * [`continuous`] and [`process`] hold the two continuous bounds.
//! * [`cli`] is the command-line front end and [`selftest`] the acceptance checks.

pub mod cli;
pub mod continuous;
pub mod func1d;
pub mod oracle;
pub mod poset;
pub mod process;
pub mod scale;
pub mod selftest;
pub mod solver;
