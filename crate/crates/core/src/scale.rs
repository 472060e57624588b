//! Value scales, monotone bijections and solver results.
//!
//! These are plain data types shared by the formula solver and the brute-force
//! oracle; neither module's logic lives here.

use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::func1d::MonotoneMap1D;

pub type Rational = BigRational;

/// Values a scale can hold: exact rationals for the combinatorial core,
/// `f64` for scales produced by inverting a real map.
pub trait Scalar:
    Clone + PartialOrd + fmt::Debug + Zero + Add<Output = Self> + Neg<Output = Self> + Send + Sync
{
}

impl<T> Scalar for T where
    T: Clone + PartialOrd + fmt::Debug + Zero + Add<Output = T> + Neg<Output = T> + Send + Sync
{
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScaleError {
    #[error("a scale needs at least one value")]
    Empty,
    #[error("scale values must be strictly increasing (positions {pos} and {next})", pos = .0, next = .0 + 1)]
    NotIncreasing(usize),
    #[error("cannot parse `{0}` as a rational")]
    Parse(String),
    #[error("scale has {got} values but the poset has {expected} elements")]
    LengthMismatch { expected: usize, got: usize },
}

/// A strictly increasing sequence `ξ_1 < .. < ξ_N`. Ranks are 0-based in code.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueScale<T> {
    values: Vec<T>,
}

impl<T: Scalar> ValueScale<T> {
    pub fn new(values: Vec<T>) -> Result<Self, ScaleError> {
        if values.is_empty() {
            return Err(ScaleError::Empty);
        }
        // `!(a < b)` rather than `a >= b` so NaN is rejected too.
        if let Some(i) = values.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(ScaleError::NotIncreasing(i));
        }
        Ok(ValueScale { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `ξ_{rank+1}`.
    pub fn at(&self, rank: usize) -> &T {
        &self.values[rank]
    }

    /// `(−ξ_N, .., −ξ_1)`, the scale under the reversed order.
    pub fn reversed_negated(&self) -> Self {
        ValueScale {
            values: self.values.iter().rev().map(|v| -v.clone()).collect(),
        }
    }

    pub fn check_len(&self, expected: usize) -> Result<(), ScaleError> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(ScaleError::LengthMismatch {
                expected,
                got: self.len(),
            })
        }
    }
}

impl ValueScale<Rational> {
    /// `1, 2, .., count`.
    pub fn integers(count: usize) -> Self {
        ValueScale {
            values: (1..=count).map(|i| Rational::from_integer(BigInt::from(i))).collect(),
        }
    }

    /// `1/n², 2/n², .., n²/n²`: the scale of an `n × n` grid with `m = id`.
    pub fn uniform_grid(n: usize) -> Self {
        let d = BigInt::from(n * n);
        ValueScale {
            values: (1..=n * n)
                .map(|i| Rational::new(BigInt::from(i), d.clone()))
                .collect(),
        }
    }

    pub fn parse<S: AsRef<str>>(values: &[S]) -> Result<Self, ScaleError> {
        let parsed = values
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }
}

impl ValueScale<f64> {
    /// `m⁻¹(i/n²)` for `i = 1..n²`.
    pub fn from_m(m: &MonotoneMap1D, n: usize) -> Result<Self, ScaleError> {
        let total = (n * n) as f64;
        let values = (1..=n * n)
            .map(|i| m.inverse(i as f64 / total).expect("i/n² lies in [0,1]"))
            .collect();
        Self::new(values)
    }
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScaleError> {
    let s = s.trim();
    if let Ok(r) = Rational::from_str(s) {
        return Ok(r);
    }
    let err = || ScaleError::Parse(s.to_owned());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').ok_or_else(err)?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let numer = BigInt::from_str(&digits).map_err(|_| err())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Always `p/q`, including `q = 1`.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A function `A → Ξ_N` stored as a 0-based rank per element.
///
/// Nothing here enforces bijectivity or monotonicity; see
/// [`crate::oracle::check_monotone_bijection`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneBijection {
    ranks: Vec<usize>,
}

impl MonotoneBijection {
    pub fn from_ranks(ranks: Vec<usize>) -> Self {
        MonotoneBijection { ranks }
    }

    /// The function sending `sequence[i]` to rank `i`.
    pub fn from_sequence(sequence: &[usize]) -> Self {
        let mut ranks = vec![0; sequence.len()];
        for (r, &a) in sequence.iter().enumerate() {
            ranks[a] = r;
        }
        MonotoneBijection { ranks }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn value<'s, T: Scalar>(&self, scale: &'s ValueScale<T>, a: usize) -> &'s T {
        scale.at(self.ranks[a])
    }

    /// Elements ordered by rank. Only meaningful for a bijection.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.ranks.len()];
        for (a, &r) in self.ranks.iter().enumerate() {
            seq[r] = a;
        }
        seq
    }

    /// `S(B, f) = Σ_k f(β_k)`.
    pub fn sum_over<T: Scalar>(&self, scale: &ValueScale<T>, nodes: &[usize]) -> T {
        nodes
            .iter()
            .fold(T::zero(), |acc, &b| acc + self.value(scale, b).clone())
    }

    pub(crate) fn swap_ranks(&mut self, a: usize, b: usize) {
        self.ranks.swap(a, b);
    }
}

/// An optimum of `S(B, f)` together with a function attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult<T> {
    pub objective: T,
    /// Query positions `π(1), .., π(n)` (0-based), ordered by increasing value.
    pub witness_perm: Vec<usize>,
    pub witness_fn: MonotoneBijection,
    /// `f(β_{π(k)})` for `k = 1..n`.
    pub per_node_values: Vec<T>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn rejects_non_increasing() {
        assert_eq!(
            ValueScale::new(vec![1.0, 2.0, 2.0]).unwrap_err(),
            ScaleError::NotIncreasing(1)
        );
        assert!(ValueScale::new(vec![0.0, f64::NAN]).is_err());
        assert_eq!(ValueScale::<f64>::new(vec![]).unwrap_err(), ScaleError::Empty);
    }

    #[test]
    fn reversal_negates() {
        let s = ValueScale::integers(3).reversed_negated();
        assert_eq!(s.values(), &[q(-3, 1), q(-2, 1), q(-1, 1)]);
    }

    #[test]
    fn uniform_grid_values() {
        let s = ValueScale::uniform_grid(2);
        assert_eq!(s.values(), &[q(1, 4), q(1, 2), q(3, 4), q(1, 1)]);
    }

    #[test]
    fn parsing_and_formatting() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/x").is_err());
        assert_eq!(fraction_string(&q(2, 1)), "2/1");
        assert_eq!(fraction_string(&q(-6, 4)), "-3/2");
    }

    #[test]
    fn from_m_matches_closed_forms() {
        let id = ValueScale::from_m(&MonotoneMap1D::identity(), 2).unwrap();
        assert_eq!(id.values(), &[0.25, 0.5, 0.75, 1.0]);
        let sq = MonotoneMap1D::power(2.0).unwrap();
        assert_eq!(ValueScale::from_m(&sq, 1).unwrap().values(), &[1.0]);
        let s = ValueScale::from_m(&sq, 2).unwrap();
        let expect = [0.5, 2f64.sqrt() / 2.0, 3f64.sqrt() / 2.0, 1.0];
        for (a, b) in s.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn from_m_reports_collapsed_values() {
        // m(u) = u^0.001 has m⁻¹(y) = y^1000, which underflows to 0.
        let flat = MonotoneMap1D::power(0.001).unwrap();
        assert!(matches!(ValueScale::from_m(&flat, 3), Err(ScaleError::NotIncreasing(_))));
    }

    #[test]
    fn bijection_round_trip() {
        let f = MonotoneBijection::from_sequence(&[2, 0, 1]);
        assert_eq!(f.ranks(), &[1, 2, 0]);
        assert_eq!(f.sequence(), vec![2, 0, 1]);
        let s = ValueScale::integers(3);
        assert_eq!(f.sum_over(&s, &[0, 1]), q(5, 1));
    }
}
