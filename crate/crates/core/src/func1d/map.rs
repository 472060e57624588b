use super::{check_unit, Func1dError};

#[derive(Debug, Clone, PartialEq)]
enum MapKind {
    Identity,
    Power(f64),
    PiecewiseLinear(Vec<(f64, f64)>),
}

/// An increasing bijection `m: [0,1] → [0,1]` with an exact inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMap1D {
    kind: MapKind,
}

impl MonotoneMap1D {
    pub fn identity() -> Self {
        MonotoneMap1D {
            kind: MapKind::Identity,
        }
    }

    /// `m(u) = u^p`.
    pub fn power(p: f64) -> Result<Self, Func1dError> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Func1dError::InvalidMap(format!("power exponent {p} must be positive")));
        }
        Ok(MonotoneMap1D {
            kind: MapKind::Power(p),
        })
    }

    /// Linear interpolation through `points`, which must run from `(0,0)` to
    /// `(1,1)` with strictly increasing coordinates.
    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self, Func1dError> {
        if points.len() < 2 {
            return Err(Func1dError::InvalidMap("need at least two points".into()));
        }
        if points.first() != Some(&(0.0, 0.0)) || points.last() != Some(&(1.0, 1.0)) {
            return Err(Func1dError::InvalidMap(
                "a bijection of [0,1] must start at (0,0) and end at (1,1)".into(),
            ));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[0].0 < w[1].0 && w[0].1 < w[1].1)) {
            return Err(Func1dError::InvalidMap(format!(
                "points {:?} and {:?} are not strictly increasing",
                w[0], w[1]
            )));
        }
        Ok(MonotoneMap1D {
            kind: MapKind::PiecewiseLinear(points),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.kind == MapKind::Identity
    }

    pub fn eval(&self, x: f64) -> Result<f64, Func1dError> {
        let x = check_unit(x)?;
        Ok(match &self.kind {
            MapKind::Identity => x,
            MapKind::Power(p) => x.powf(*p),
            MapKind::PiecewiseLinear(pts) => interpolate(pts, x, |p| p.0, |p| p.1),
        })
    }

    pub fn inverse(&self, y: f64) -> Result<f64, Func1dError> {
        let y = check_unit(y)?;
        Ok(match &self.kind {
            MapKind::Identity => y,
            MapKind::Power(p) => y.powf(1.0 / p),
            MapKind::PiecewiseLinear(pts) => interpolate(pts, y, |p| p.1, |p| p.0),
        })
    }

    /// Inverse by bisection on `eval`; the fallback for maps without a closed form.
    pub fn inverse_numeric(&self, y: f64) -> Result<f64, Func1dError> {
        let y = check_unit(y)?;
        Ok(bisect_inverse(|x| self.eval(x).expect("x in [0,1]"), y, 1e-12))
    }

    /// Interior kinks, useful as quadrature breakpoints.
    pub fn kinks(&self) -> Vec<f64> {
        match &self.kind {
            MapKind::PiecewiseLinear(pts) => pts[1..pts.len() - 1].iter().map(|p| p.0).collect(),
            _ => Vec::new(),
        }
    }
}

/// Linear interpolation in a table sorted by `key`.
fn interpolate<K, V>(pts: &[(f64, f64)], at: f64, key: K, val: V) -> f64
where
    K: Fn(&(f64, f64)) -> f64,
    V: Fn(&(f64, f64)) -> f64,
{
    let i = pts.partition_point(|p| key(p) <= at).clamp(1, pts.len() - 1);
    let (lo, hi) = (&pts[i - 1], &pts[i]);
    let (k0, k1) = (key(lo), key(hi));
    if k1 == k0 {
        return val(hi);
    }
    let w = (at - k0) / (k1 - k0);
    val(lo) + w * (val(hi) - val(lo))
}

/// `x ∈ [0,1]` with `f(x) ≈ y` for increasing `f`.
///
/// Bisects until the bracket is narrower than `tol`, then keeps going while
/// the residual `|f(x) − y|` exceeds `tol / 10` and the bracket can still shrink,
/// so steep maps also meet the residual contract.
pub fn bisect_inverse<F: Fn(f64) -> f64>(f: F, y: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if hi - lo <= tol && (fm - y).abs() <= 0.1 * tol {
            return mid;
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if fm < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq)]
enum PathKind {
    Identity,
    Constant(f64),
    PiecewiseLinear(Vec<(f64, f64)>),
}

/// A non-decreasing `t: [0,1] → [0,1]`, not necessarily bijective.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonePath {
    kind: PathKind,
}

impl MonotonePath {
    pub fn identity() -> Self {
        MonotonePath {
            kind: PathKind::Identity,
        }
    }

    pub fn constant(value: f64) -> Result<Self, Func1dError> {
        check_unit(value).map_err(|_| Func1dError::InvalidMap(format!("constant {value} outside [0,1]")))?;
        Ok(MonotonePath {
            kind: PathKind::Constant(value),
        })
    }

    /// Points with `x` strictly increasing from 0 to 1 and `y` non-decreasing in `[0,1]`.
    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self, Func1dError> {
        if points.len() < 2 || points[0].0 != 0.0 || points[points.len() - 1].0 != 1.0 {
            return Err(Func1dError::InvalidMap("path points must span x = 0 to x = 1".into()));
        }
        if let Some(p) = points.iter().find(|p| !(0.0..=1.0).contains(&p.1)) {
            return Err(Func1dError::InvalidMap(format!("path value {} outside [0,1]", p.1)));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[0].0 < w[1].0 && w[0].1 <= w[1].1)) {
            return Err(Func1dError::InvalidMap(format!(
                "points {:?} and {:?} are not monotone",
                w[0], w[1]
            )));
        }
        Ok(MonotonePath {
            kind: PathKind::PiecewiseLinear(points),
        })
    }

    pub fn eval(&self, s: f64) -> Result<f64, Func1dError> {
        let s = check_unit(s)?;
        Ok(match &self.kind {
            PathKind::Identity => s,
            PathKind::Constant(a) => *a,
            PathKind::PiecewiseLinear(pts) => interpolate(pts, s, |p| p.0, |p| p.1),
        })
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self.kind {
            PathKind::Constant(a) => Some(a),
            _ => None,
        }
    }

    pub fn kinks(&self) -> Vec<f64> {
        match &self.kind {
            PathKind::PiecewiseLinear(pts) => pts[1..pts.len() - 1].iter().map(|p| p.0).collect(),
            _ => Vec::new(),
        }
    }

    /// Pointwise `self ≤ other` on the union of both kink sets and a 1001-point grid.
    pub fn dominated_by(&self, other: &MonotonePath) -> bool {
        let mut xs: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
        xs.extend(self.kinks());
        xs.extend(other.kinks());
        xs.iter()
            .all(|&x| self.eval(x).expect("in range") <= other.eval(x).expect("in range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds() -> Vec<MonotoneMap1D> {
        vec![
            MonotoneMap1D::identity(),
            MonotoneMap1D::power(2.0).unwrap(),
            MonotoneMap1D::power(0.5).unwrap(),
            MonotoneMap1D::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]).unwrap(),
        ]
    }

    #[test]
    fn inverse_fixtures() {
        assert_eq!(MonotoneMap1D::identity().inverse(0.3).unwrap(), 0.3);
        assert_eq!(MonotoneMap1D::power(2.0).unwrap().inverse(0.25).unwrap(), 0.5);
        let pwl = MonotoneMap1D::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]).unwrap();
        assert_eq!(pwl.inverse(0.25).unwrap(), 0.5);
        assert_eq!(pwl.eval(0.75).unwrap(), 0.625);
    }

    #[test]
    fn inverse_composed_with_eval_is_identity() {
        for m in kinds() {
            for i in 0..=1000 {
                let x = i as f64 / 1000.0;
                let back = m.inverse(m.eval(x).unwrap()).unwrap();
                assert!((back - x).abs() <= 1e-11, "{m:?} at {x}: {back}");
            }
        }
    }

    #[test]
    fn numeric_inverse_contract() {
        for m in kinds() {
            for i in 0..=200 {
                let y = i as f64 / 200.0;
                let x = m.inverse_numeric(y).unwrap();
                assert!((m.eval(x).unwrap() - y).abs() <= 1e-11);
                assert!((x - m.inverse(y).unwrap()).abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn rejects_bad_maps_and_points() {
        assert!(MonotoneMap1D::power(0.0).is_err());
        assert!(MonotoneMap1D::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.5), (0.5, 0.7), (1.0, 1.0)]).is_err());
        assert!(MonotoneMap1D::piecewise_linear(vec![(0.0, 0.1), (1.0, 1.0)]).is_err());
        assert_eq!(
            MonotoneMap1D::identity().eval(1.5),
            Err(Func1dError::OutOfDomain(1.5))
        );
        assert!(MonotonePath::constant(1.2).is_err());
        assert!(MonotonePath::piecewise_linear(vec![(0.0, 0.5), (1.0, 0.4)]).is_err());
    }

    #[test]
    fn paths() {
        let t = MonotonePath::piecewise_linear(vec![(0.0, 0.2), (0.5, 0.2), (1.0, 0.8)]).unwrap();
        assert_eq!(t.eval(0.25).unwrap(), 0.2);
        assert!((t.eval(0.75).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(t.kinks(), vec![0.5]);
        assert!(MonotonePath::constant(0.2).unwrap().dominated_by(&t));
        assert!(!MonotonePath::identity().dominated_by(&t));
    }
}
