//! Brute-force ground truth for the discrete problem.
//!
//! Every monotone bijection onto a strictly increasing scale is a linear
//! extension, so enumerating the extensions enumerates `F`. Nothing here uses
//! the down-set formulas from [`crate::solver`].

use rand::Rng;
use thiserror::Error;

use crate::poset::{ElementSet, Poset, PosetError, QuerySet};
use crate::scale::{BoundResult, MonotoneBijection, Scalar, ScaleError, ValueScale};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("query set is empty")]
    EmptyQuery,
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub min: BoundResult<T>,
    pub max: BoundResult<T>,
    /// Number of linear extensions visited, i.e. `|F|`.
    pub count: usize,
}

/// Exact `min_f S(B, f)` and `max_f S(B, f)` by enumerating all of `F`.
///
/// The first extension (lexicographic order) reaching each optimum is kept.
pub fn brute_min_max<T: Scalar>(
    poset: &Poset,
    scale: &ValueScale<T>,
    query: &QuerySet,
    cap: usize,
) -> Result<OracleResult<T>, OracleError> {
    if query.is_empty() {
        return Err(OracleError::EmptyQuery);
    }
    scale.check_len(poset.len())?;
    let nodes = query.elements();
    let mut min: Option<(T, Vec<usize>)> = None;
    let mut max: Option<(T, Vec<usize>)> = None;
    let mut count = 0;
    let mut rank = vec![0; poset.len()];
    for ext in poset.linear_extensions(cap) {
        let ext = ext?;
        count += 1;
        for (r, &a) in ext.iter().enumerate() {
            rank[a] = r;
        }
        let total = nodes
            .iter()
            .fold(T::zero(), |acc, &b| acc + scale.at(rank[b]).clone());
        if min.as_ref().is_none_or(|(v, _)| total < *v) {
            min = Some((total.clone(), ext.clone()));
        }
        if max.as_ref().is_none_or(|(v, _)| total > *v) {
            max = Some((total, ext));
        }
    }
    let finish = |(objective, seq): (T, Vec<usize>)| {
        let witness_fn = MonotoneBijection::from_sequence(&seq);
        let mut perm: Vec<usize> = (0..nodes.len()).collect();
        perm.sort_by_key(|&p| witness_fn.rank(nodes[p]));
        let per_node_values = perm
            .iter()
            .map(|&p| witness_fn.value(scale, nodes[p]).clone())
            .collect();
        BoundResult {
            objective,
            witness_perm: perm,
            witness_fn,
            per_node_values,
        }
    };
    Ok(OracleResult {
        min: finish(min.expect("every poset has a linear extension")),
        max: finish(max.expect("every poset has a linear extension")),
        count,
    })
}

/// Why a rank map is not in `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongSize { expected: usize, got: usize },
    /// This rank is missing (so another is repeated or out of range).
    NotBijective { missing_rank: usize },
    /// `lower ⪯ upper` but `f(lower) > f(upper)`.
    NotMonotone { lower: usize, upper: usize },
}

/// `Ok` iff `f` is a bijection onto the `N` ranks and order-preserving.
pub fn check_monotone_bijection(poset: &Poset, f: &MonotoneBijection) -> Result<(), Violation> {
    let n = poset.len();
    if f.len() != n {
        return Err(Violation::WrongSize {
            expected: n,
            got: f.len(),
        });
    }
    let mut hit = ElementSet::empty(n);
    for &r in f.ranks() {
        if r < n {
            hit.insert(r);
        }
    }
    if let Some(missing_rank) = (0..n).find(|&r| !hit.contains(r)) {
        return Err(Violation::NotBijective { missing_rank });
    }
    // Covers generate the order, so checking them is enough.
    for &(lower, upper) in poset.covers() {
        if f.rank(lower) > f.rank(upper) {
            return Err(Violation::NotMonotone { lower, upper });
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwapError {
    #[error("elements are comparable")]
    NotIncomparable,
    #[error("values are not adjacent in the scale")]
    NotAdjacentValues,
}

/// Exchanges the values of two incomparable elements whose ranks differ by one.
pub fn swap_adjacent(
    poset: &Poset,
    f: &MonotoneBijection,
    a: usize,
    b: usize,
) -> Result<MonotoneBijection, SwapError> {
    if poset.comparable(a, b) {
        return Err(SwapError::NotIncomparable);
    }
    if f.rank(a).abs_diff(f.rank(b)) != 1 {
        return Err(SwapError::NotAdjacentValues);
    }
    let mut g = f.clone();
    g.swap_ranks(a, b);
    Ok(g)
}

/// A random linear extension: repeatedly removes a uniformly chosen minimal element.
pub fn random_linear_extension<R: Rng + ?Sized>(poset: &Poset, rng: &mut R) -> MonotoneBijection {
    let n = poset.len();
    let mut placed = ElementSet::empty(n);
    let mut seq = Vec::with_capacity(n);
    while seq.len() < n {
        let minimal: Vec<usize> = (0..n)
            .filter(|&a| !placed.contains(a))
            .filter(|&a| poset.down_set(a).iter().all(|c| c == a || placed.contains(c)))
            .collect();
        let a = minimal[rng.gen_range(0..minimal.len())];
        placed.insert(a);
        seq.push(a);
    }
    MonotoneBijection::from_sequence(&seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{GridOrder, DEFAULT_CAP};
    use crate::scale::Rational;
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn int(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn brute_force_fixtures() {
        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let q = QuerySet::new(&g, &["(1,2)"]).unwrap();
        let r = brute_min_max(&g, &ValueScale::integers(4), &q, DEFAULT_CAP).unwrap();
        assert_eq!((r.min.objective, r.max.objective, r.count), (int(2), int(3), 2));

        let a = Poset::new(&["a", "b", "c"], &[]).unwrap();
        let q = QuerySet::new(&a, &["a"]).unwrap();
        let r = brute_min_max(&a, &ValueScale::integers(3), &q, DEFAULT_CAP).unwrap();
        assert_eq!((r.min.objective, r.max.objective, r.count), (int(1), int(3), 6));

        let c = Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let q = QuerySet::new(&c, &["b", "d"]).unwrap();
        let r = brute_min_max(&c, &ValueScale::integers(4), &q, DEFAULT_CAP).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.min.objective, r.max.objective);
    }

    #[test]
    fn brute_force_errors() {
        let a = Poset::from_indices((0..5).map(|i| i.to_string()).collect(), vec![]).unwrap();
        let q = QuerySet::from_indices(&a, vec![0]).unwrap();
        assert_eq!(
            brute_min_max(&a, &ValueScale::integers(5), &q, 100).unwrap_err(),
            OracleError::Poset(PosetError::CapExceeded(100))
        );
        let empty = QuerySet::from_indices(&a, vec![]).unwrap();
        assert_eq!(
            brute_min_max(&a, &ValueScale::integers(5), &empty, 100).unwrap_err(),
            OracleError::EmptyQuery
        );
    }

    #[test]
    fn checker_reports_violations() {
        let c = Poset::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(
            check_monotone_bijection(&c, &MonotoneBijection::from_ranks(vec![1, 0])),
            Err(Violation::NotMonotone { lower: 0, upper: 1 })
        );
        assert_eq!(
            check_monotone_bijection(&c, &MonotoneBijection::from_ranks(vec![0, 0])),
            Err(Violation::NotBijective { missing_rank: 1 })
        );
        assert_eq!(
            check_monotone_bijection(&c, &MonotoneBijection::from_ranks(vec![0])),
            Err(Violation::WrongSize { expected: 2, got: 1 })
        );
        assert!(check_monotone_bijection(&c, &MonotoneBijection::from_ranks(vec![0, 1])).is_ok());
    }

    #[test]
    fn swap_relates_the_two_grid_extensions() {
        let g = Poset::grid(2, GridOrder::Product).unwrap();
        let (x, y) = (g.index_of("(1,2)").unwrap(), g.index_of("(2,1)").unwrap());
        let f = MonotoneBijection::from_sequence(&[0, 1, 2, 3]);
        let h = swap_adjacent(&g, &f, x, y).unwrap();
        assert_eq!(h.rank(x), 2);
        assert_eq!(h, MonotoneBijection::from_sequence(&[0, 2, 1, 3]));
        assert!(check_monotone_bijection(&g, &h).is_ok());

        assert_eq!(
            swap_adjacent(&g, &f, 0, 3).unwrap_err(),
            SwapError::NotIncomparable
        );
        let a = Poset::new(&["a", "b", "c"], &[]).unwrap();
        let f = MonotoneBijection::from_sequence(&[0, 1, 2]);
        assert!(swap_adjacent(&a, &f, 0, 1).is_ok());
        assert_eq!(swap_adjacent(&a, &f, 0, 2).unwrap_err(), SwapError::NotAdjacentValues);
    }

    #[test]
    fn random_extensions_are_valid() {
        let g = Poset::grid_rect(3, 2, GridOrder::Product).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(check_monotone_bijection(&g, &random_linear_extension(&g, &mut rng)).is_ok());
        }
    }
}
