//! Truncated Laurent series over a finite field.
//!
//! A [`LaurentSeries`] is an element of `F_q((t))` known modulo `t^N`, where
//! `N` is its absolute precision. Arithmetic follows the usual big-O rules and
//! never extends precision on its own.

use std::fmt;
use std::sync::Arc;

use super::finite_field::{FiniteField, Fq};
use super::AlgebraError;

/// Absolute precision given to series that are known exactly (finite sums).
/// Storage is proportional to the number of stored terms, never to the precision.
pub const EXACT_PRECISION: i64 = 1 << 40;

/// Most terms an inverse of a non-monomial exact series is expanded to.
pub const MAX_INVERSE_TERMS: i64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct LaurentSeries {
    field: Arc<FiniteField>,
    /// Exponent of `coeffs[0]`. Equal to `prec` for the zero-to-precision element.
    val: i64,
    /// Coefficients of `t^val, t^(val+1), ...`; first entry nonzero, no trailing zeros.
    coeffs: Vec<Fq>,
    /// The series is known modulo `t^prec`.
    prec: i64,
}

impl LaurentSeries {
    /// Builds `sum_k coeffs[k] t^(val + k) + O(t^prec)`, dropping terms at or
    /// beyond the precision.
    pub fn new(field: Arc<FiniteField>, val: i64, coeffs: Vec<Fq>, prec: i64) -> Self {
        let mut s = LaurentSeries { field, val, coeffs, prec };
        s.normalize();
        s
    }

    pub fn zero(field: Arc<FiniteField>, prec: i64) -> Self {
        LaurentSeries { field, val: prec, coeffs: Vec::new(), prec }
    }

    /// `c t^k + O(t^(k + rel_prec))`.
    pub fn monomial(field: Arc<FiniteField>, c: Fq, k: i64, rel_prec: i64) -> Self {
        Self::new(field, k, vec![c], k + rel_prec)
    }

    /// The finite sum `sum_k coeffs[k] t^(val + k)`, known exactly.
    pub fn exact(field: Arc<FiniteField>, val: i64, coeffs: Vec<Fq>) -> Self {
        Self::new(field, val, coeffs, EXACT_PRECISION)
    }

    pub fn exact_monomial(field: Arc<FiniteField>, c: Fq, k: i64) -> Self {
        Self::exact(field, k, vec![c])
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT_PRECISION
    }

    pub fn one(field: Arc<FiniteField>, rel_prec: i64) -> Self {
        Self::monomial(field, Fq::ONE, 0, rel_prec)
    }

    pub fn constant(field: Arc<FiniteField>, c: Fq, rel_prec: i64) -> Self {
        Self::monomial(field, c, 0, rel_prec)
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact valuation, or `None` when the series is zero to its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound for the true valuation: the valuation if known, else the precision.
    pub fn valuation_bound(&self) -> i64 {
        self.val
    }

    pub fn leading_coefficient(&self) -> Option<Fq> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `t^k`; `None` if `k` is at or beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Fq> {
        if k >= self.prec {
            return None;
        }
        if k < self.val {
            return Some(Fq::ZERO);
        }
        Some(self.coeffs.get((k - self.val) as usize).copied().unwrap_or(Fq::ZERO))
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.val + i as i64, c))
    }

    /// Same series with precision lowered to `prec` (never raised).
    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.field.clone(), self.val, self.coeffs.clone(), prec.min(self.prec))
    }

    fn check_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        let f = &self.field;
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        if lo >= prec {
            return Ok(Self::zero(self.field.clone(), prec));
        }
        let top = |x: &Self| if x.coeffs.is_empty() { lo } else { x.val + x.coeffs.len() as i64 };
        let hi = prec.min(top(self).max(top(other)));
        let mut coeffs = vec![Fq::ZERO; (hi - lo).max(0) as usize];
        for (k, c) in self.terms().chain(other.terms()) {
            if k < prec {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = f.add(*slot, c);
            }
        }
        Ok(Self::new(self.field.clone(), lo, coeffs, prec))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        LaurentSeries { field: self.field.clone(), val: self.val, coeffs, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        let f = &self.field;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        let val = self.val + other.val;
        if self.coeffs.is_empty() || other.coeffs.is_empty() || val >= prec {
            return Ok(Self::zero(self.field.clone(), prec));
        }
        let len = ((prec - val) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![Fq::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
                }
            }
        }
        Ok(Self::new(self.field.clone(), val, coeffs, prec))
    }

    /// Multiplies by a field constant.
    pub fn scale(&self, c: Fq) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), self.val, coeffs, self.prec)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { field: self.field.clone(), val: self.val + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    /// Inverse to the maximal provable precision: relative precision is kept,
    /// so `t^v u + O(t^N)` inverts to precision `N - 2v`.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.is_empty() {
            return Err(AlgebraError::DivisionByZeroToPrecision { precision: self.prec });
        }
        let f = &self.field;
        if self.coeffs.len() == 1 {
            let c = f.inv(self.coeffs[0]).expect("leading coefficient is nonzero");
            return Ok(Self::new(self.field.clone(), -self.val, vec![c], self.prec - 2 * self.val));
        }
        let rel = (self.prec - self.val).min(MAX_INVERSE_TERMS) as usize;
        let lead_inv = f.inv(self.coeffs[0]).expect("leading coefficient is nonzero");
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(Fq::ZERO);
        let mut b = vec![Fq::ZERO; rel];
        b[0] = lead_inv;
        for k in 1..rel {
            let mut s = Fq::ZERO;
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = f.add(s, f.mul(a(i), b[k - i]));
            }
            b[k] = f.neg(f.mul(s, lead_inv));
        }
        Ok(Self::new(self.field.clone(), -self.val, b, rel as i64 - self.val))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul(&other.inv()?)
    }

    /// `self^k` for `k >= 0`, or via the inverse for `k < 0`.
    pub fn pow(&self, k: i64) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let rel = (self.prec - self.val).max(1);
        let mut acc = Self::one(self.field.clone(), rel);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The composition `self(g)` for `g` of positive valuation, to the
    /// maximal precision the big-O rules can certify.
    pub fn substitute(&self, g: &Self) -> Result<Self, AlgebraError> {
        self.check_field(g)?;
        let w = match g.valuation() {
            Some(w) if w > 0 => w,
            _ => return Err(AlgebraError::InvalidSubstitution),
        };
        // Tail sum_{k >= N} f_k g^k has valuation >= w N.
        let tail = w * self.prec;
        let mut acc = Self::zero(self.field.clone(), tail);
        if !self.coeffs.is_empty() {
            let mut power = g.pow(self.val)?;
            for (i, &c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    power = power.mul(g)?;
                }
                if !c.is_zero() {
                    acc = acc.add(&power.scale(c))?;
                }
            }
        }
        if acc.is_zero_to_precision() {
            return Err(AlgebraError::InsufficientPrecision { precision: acc.prec });
        }
        Ok(acc)
    }

    /// Agreement on the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero_to_precision(),
            Err(_) => false,
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        if first {
            write!(f, "O(t^{})", self.prec)
        } else {
            write!(f, " + O(t^{})", self.prec)
        }
    }
}

impl super::linalg::CommRing for LaurentSeries {
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other).expect("series over one field")
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentSeries::mul(self, other).expect("series over one field")
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(p).unwrap())
    }

    fn series(field: &Arc<FiniteField>, val: i64, cs: &[u32], prec: i64) -> LaurentSeries {
        LaurentSeries::new(field.clone(), val, cs.iter().map(|&c| Fq(c)).collect(), prec)
    }

    #[test]
    fn cancellation() {
        let k = f(5);
        let a = series(&k, -1, &[1, 1], 20);
        let b = series(&k, -1, &[4], 20);
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation(), Some(0));
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![(0, Fq(1))]);
        assert_eq!(s.precision(), 20);
    }

    #[test]
    fn geometric_series() {
        let k = f(3);
        let one_minus_t = series(&k, 0, &[1, 2], 10);
        let inv = one_minus_t.inv().unwrap();
        assert_eq!(inv.precision(), 10);
        for j in 0..10 {
            assert_eq!(inv.coeff(j), Some(Fq(1)));
        }
        assert_eq!(inv.coeff(10), None);
    }

    #[test]
    fn valuations_add() {
        let k = f(7);
        let a = series(&k, 2, &[1], 30);
        let b = series(&k, -5, &[1], 30);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.valuation(), Some(-3));
        assert_eq!(c.precision(), 25);
    }

    #[test]
    fn division_by_zero_to_precision() {
        let k = f(2);
        let z = LaurentSeries::zero(k.clone(), 4);
        let a = series(&k, 0, &[1], 8);
        assert!(matches!(a.div(&z), Err(AlgebraError::DivisionByZeroToPrecision { .. })));
    }

    #[test]
    fn inverse_precision_rule() {
        let k = f(5);
        let a = series(&k, 3, &[2, 1], 10);
        let b = a.inv().unwrap();
        assert_eq!(b.valuation(), Some(-3));
        assert_eq!(b.precision(), 4);
        let one = a.mul(&b).unwrap();
        assert_eq!(one.terms().collect::<Vec<_>>(), vec![(0, Fq(1))]);
    }

    #[test]
    fn substitute_identity_shift() {
        let k = f(5);
        let t = series(&k, 1, &[1], 12);
        let g = series(&k, 1, &[1, 1], 12);
        let r = t.substitute(&g).unwrap();
        assert!(r.agrees_with(&g));
    }

    #[test]
    fn substitute_pole() {
        // t^{-1} at t(1+t) over F_2 is t^{-1}(1 + t + t^2 + ...)
        let k = f(2);
        let f_ = series(&k, -1, &[1], 10);
        let g = series(&k, 1, &[1, 1], 12);
        let r = f_.substitute(&g).unwrap();
        assert_eq!(r.valuation(), Some(-1));
        for j in -1..r.precision() {
            assert_eq!(r.coeff(j), Some(Fq(1)));
        }
    }

    #[test]
    fn substitute_root_of_unity() {
        // Direct expansion: (zeta t)^2 = zeta^2 t^2.
        let k = f(7);
        let zeta = k.primitive_root_of_unity(3).unwrap();
        let t2 = series(&k, 2, &[1], 20);
        let g = LaurentSeries::monomial(k.clone(), zeta, 1, 20);
        let r = t2.substitute(&g).unwrap();
        let expected = k.mul(zeta, zeta);
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![(2, expected)]);
    }

    #[test]
    fn substitute_needs_positive_valuation() {
        let k = f(3);
        let f_ = series(&k, 0, &[1, 1], 5);
        let g = series(&k, 0, &[1], 5);
        assert!(matches!(f_.substitute(&g), Err(AlgebraError::InvalidSubstitution)));
        let zero = LaurentSeries::zero(k.clone(), 3);
        let t = series(&k, 1, &[1], 5);
        assert!(matches!(zero.substitute(&t), Err(AlgebraError::InsufficientPrecision { .. })));
    }

    fn arb_series(field: Arc<FiniteField>) -> impl Strategy<Value = LaurentSeries> {
        let p = field.characteristic();
        (-6i64..6, prop::collection::vec(0..p, 1..12), 4i64..20).prop_map(move |(v, mut cs, rel)| {
            if cs[0] == 0 {
                cs[0] = 1;
            }
            LaurentSeries::new(field.clone(), v, cs.into_iter().map(Fq).collect(), v + rel)
        })
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in arb_series(f(5)), b in arb_series(f(5))) {
            let c = a.mul(&b).unwrap();
            prop_assert_eq!(c.valuation(), Some(a.valuation().unwrap() + b.valuation().unwrap()));
        }

        #[test]
        fn substitute_t_is_identity(a in arb_series(f(3))) {
            let t = LaurentSeries::monomial(f(3), Fq::ONE, 1, 40);
            let r = a.substitute(&t).unwrap();
            prop_assert!(r.agrees_with(&a));
            prop_assert!(r.precision() >= a.precision().min(40));
        }

        #[test]
        fn inverse_roundtrip(a in arb_series(f(7))) {
            let b = a.inv().unwrap();
            let one = a.mul(&b).unwrap();
            prop_assert!(one.agrees_with(&LaurentSeries::one(f(7), 100)));
        }
    }
}
