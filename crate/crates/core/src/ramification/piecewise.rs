use std::fmt;

use num_traits::{One, Signed};

use crate::algebra::Rational;

/// A continuous, strictly increasing piecewise-linear function on `[x_0, oo)`.
///
/// Stored canonically: breakpoints strictly increasing, and no breakpoint
/// (other than the left end) where the slope does not change.
#[derive(Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    /// `slopes[k]` holds on `[xs[k], xs[k+1]]`; the last one on `[xs[last], oo)`.
    slopes: Vec<Rational>,
}

impl PiecewiseLinear {
    /// From points `(xs[k], ys[k])` joined by segments, continued past the last
    /// point with `final_slope`.
    pub fn from_points(xs: Vec<Rational>, ys: Vec<Rational>, final_slope: Rational) -> Self {
        assert!(!xs.is_empty() && xs.len() == ys.len());
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "breakpoints must increase");
        let mut slopes: Vec<Rational> = xs.windows(2).zip(ys.windows(2)).map(|(x, y)| (&y[1] - &y[0]) / (&x[1] - &x[0])).collect();
        slopes.push(final_slope);
        assert!(slopes.iter().all(|s| s.is_positive()), "function must be strictly increasing");
        let mut out = PiecewiseLinear { xs: vec![xs[0].clone()], ys: vec![ys[0].clone()], slopes: vec![slopes[0].clone()] };
        for k in 1..xs.len() {
            if slopes[k] != *out.slopes.last().unwrap() {
                out.xs.push(xs[k].clone());
                out.ys.push(ys[k].clone());
                out.slopes.push(slopes[k].clone());
            }
        }
        out
    }

    pub fn identity_from(x0: Rational) -> Self {
        Self::from_points(vec![x0.clone()], vec![x0], Rational::one())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.xs
    }

    pub fn values(&self) -> &[Rational] {
        &self.ys
    }

    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn domain_start(&self) -> &Rational {
        &self.xs[0]
    }

    /// Value at `x`; `None` left of the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        if *x < self.xs[0] {
            return None;
        }
        let k = self.xs.partition_point(|b| b <= x) - 1;
        Some(&self.ys[k] + &self.slopes[k] * (x - &self.xs[k]))
    }

    pub fn inverse(&self) -> Self {
        let slopes: Vec<Rational> = self.slopes.iter().map(|s| s.recip()).collect();
        PiecewiseLinear { xs: self.ys.clone(), ys: self.xs.clone(), slopes }
    }

    /// `self o inner`
    pub fn compose(&self, inner: &PiecewiseLinear) -> Self {
        let inv = inner.inverse();
        let mut xs: Vec<Rational> = inner.xs.clone();
        xs.extend(self.xs.iter().filter_map(|b| inv.eval(b)));
        xs.sort();
        xs.dedup();
        let ys: Vec<Rational> = xs.iter().map(|x| self.eval(&inner.eval(x).unwrap()).expect("inner maps into the outer domain")).collect();
        let final_slope = self.slopes.last().unwrap() * inner.slopes.last().unwrap();
        Self::from_points(xs, ys, final_slope)
    }

    /// Breakpoints, midpoints between consecutive breakpoints, and one point past the last.
    pub fn sample_points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for w in self.xs.windows(2) {
            out.push(w[0].clone());
            out.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
        }
        let last = self.xs.last().unwrap();
        out.push(last.clone());
        out.push(last + Rational::one());
        out
    }

    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[1] >= w[0])
    }
}

impl fmt::Debug for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.xs.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "({x}, {}) slope {}", self.ys[k], self.slopes[k])?;
        }
        Ok(())
    }
}

/// `ceil(x)` for a rational.
pub fn ceil(x: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    x.ceil().to_integer().to_i64().expect("index fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    fn pl(points: &[(i64, i64)], final_slope: Rational) -> PiecewiseLinear {
        PiecewiseLinear::from_points(points.iter().map(|p| int(p.0)).collect(), points.iter().map(|p| int(p.1)).collect(), final_slope)
    }

    #[test]
    fn canonical_merging() {
        let f = pl(&[(-1, -1), (0, 0), (1, 1), (2, 2)], int(1));
        assert_eq!(f, PiecewiseLinear::identity_from(int(-1)));
        assert_eq!(f.breakpoints().len(), 1);
    }

    #[test]
    fn eval_inverse_compose() {
        let f = pl(&[(-1, -1), (0, 0), (2, 2)], rat(1, 3));
        assert_eq!(f.eval(&int(5)).unwrap(), int(3));
        assert_eq!(f.eval(&int(-2)), None);
        let g = f.inverse();
        assert_eq!(g.eval(&int(3)).unwrap(), int(5));
        assert_eq!(f.compose(&g), PiecewiseLinear::identity_from(int(-1)));
        assert_eq!(g.compose(&f), PiecewiseLinear::identity_from(int(-1)));
        assert!(f.is_concave() && g.is_convex());
    }

    proptest! {
        #[test]
        fn composition_is_pointwise(a in 1i64..5, b in 1i64..5, c in 1i64..4, d in 1i64..4) {
            let f = pl(&[(-1, -1), (0, 0), (a, a)], rat(1, c));
            let g = pl(&[(-1, -1), (0, 0), (b, b)], rat(1, d));
            let h = f.compose(&g);
            for k in -4..40 {
                let x = rat(k, 4);
                prop_assert_eq!(h.eval(&x), f.eval(&g.eval(&x).unwrap()));
            }
        }
    }
}
