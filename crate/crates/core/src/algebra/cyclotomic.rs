//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element of conductor `m` is stored as rational coordinates in the power
//! basis `1, zeta, ..., zeta^(phi(m)-1)` of `Q[x]/(Phi_m)`, written as integer
//! numerators over one positive common denominator. The representation is
//! canonical for a fixed conductor; values of different conductors are
//! compared and combined inside `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduction data for one conductor.
#[derive(Debug)]
struct CyclotomicTables {
    m: u32,
    phi: usize,
    /// `powers[k]` = coordinates of `x^k mod Phi_m` for `k < m`.
    powers: Vec<Vec<i64>>,
}

fn tables(m: u32) -> Arc<CyclotomicTables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&m) {
        return t.clone();
    }
    let built = Arc::new(build_tables(m));
    cache.write().unwrap().entry(m).or_insert(built).clone()
}

/// Coefficients of the `m`-th cyclotomic polynomial, ascending.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b is monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn build_tables(m: u32) -> CyclotomicTables {
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    if phi > 0 {
        cur[0] = 1;
    }
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce by the monic Phi_m
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1] - top * phi_poly[i];
        }
        cur[0] = -top * phi_poly[0];
    }
    CyclotomicTables { m, phi, powers }
}

pub fn euler_phi(m: u32) -> u32 {
    let mut result = m;
    let mut n = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic { conductor: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let mut c = Cyclotomic { conductor: 1, num: vec![r.numer().clone()], den: r.denom().clone() };
        c.normalize();
        c
    }

    /// `zeta_m^k`, with `zeta_m = exp(2 pi i / m)`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let t = tables(m);
        let k = k.rem_euclid(m as i64) as usize;
        Cyclotomic { conductor: m, num: t.powers[k].iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() }
    }

    /// `sum_k counts[k] zeta_m^k` for an integer vector indexed by exponent mod `m`.
    pub fn from_power_counts(m: u32, counts: &[i64]) -> Self {
        let t = tables(m);
        let mut acc = vec![0i64; t.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &r) in acc.iter_mut().zip(&t.powers[k % m as usize]) {
                    *a += c * r;
                }
            }
        }
        let mut out = Cyclotomic { conductor: m, num: acc.into_iter().map(BigInt::from).collect(), den: BigInt::one() };
        out.normalize();
        out
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Rational coordinates in the power basis of `Q(zeta_conductor)`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for n in &mut self.num {
                *n = -n.clone();
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// The same element viewed in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "cannot embed conductor {} into {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let t = tables(m);
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &r) in num.iter_mut().zip(&t.powers[(j * step) % m as usize]) {
                if r != 0 {
                    *acc += c * r;
                }
            }
        }
        Cyclotomic { conductor: m, num, den: self.den.clone() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m), b.embed(m))
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    /// The automorphism `zeta_m -> zeta_m^k` for `k` prime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.conductor;
        let t = tables(m);
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as i64 * k).rem_euclid(m as i64) as usize;
            for (acc, &r) in num.iter_mut().zip(&t.powers[e]) {
                if r != 0 {
                    *acc += c * r;
                }
            }
        }
        Cyclotomic { conductor: m, num, den: self.den.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out =
            Cyclotomic { conductor: self.conductor, num: self.num.iter().map(|n| n * r.numer()).collect(), den: &self.den * r.denom() };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    fn add_same(a: &Self, b: &Self) -> Self {
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        let mut out = Cyclotomic { conductor: a.conductor, num, den };
        out.normalize();
        out
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let t = tables(a.conductor);
        let m = t.m as usize;
        if t.phi == 1 {
            let mut out = Cyclotomic { conductor: a.conductor, num: vec![&a.num[0] * &b.num[0]], den: &a.den * &b.den };
            out.normalize();
            return out;
        }
        // Convolution in Z[x]/(x^m - 1), then reduction mod Phi_m.
        let small = |v: &[BigInt]| v.iter().map(|n| n.to_i64().filter(|x| x.abs() < 1 << 28)).collect::<Option<Vec<_>>>();
        let mut wide = vec![BigInt::zero(); m];
        match (small(&a.num), small(&b.num)) {
            (Some(x), Some(y)) => {
                let mut acc = vec![0i128; m];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        if yj != 0 {
                            acc[(i + j) % m] += xi as i128 * yj as i128;
                        }
                    }
                }
                for (w, v) in wide.iter_mut().zip(acc) {
                    *w = BigInt::from(v);
                }
            }
            _ => {
                for (i, xi) in a.num.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in b.num.iter().enumerate() {
                        if !yj.is_zero() {
                            wide[(i + j) % m] += xi * yj;
                        }
                    }
                }
            }
        }
        let mut num: Vec<BigInt> = wide[..t.phi].to_vec();
        for (k, w) in wide.iter().enumerate().skip(t.phi) {
            if w.is_zero() {
                continue;
            }
            for (acc, &r) in num.iter_mut().zip(&t.powers[k]) {
                if r != 0 {
                    *acc += w * r;
                }
            }
        }
        let mut out = Cyclotomic { conductor: a.conductor, num, den: &a.den * &b.den };
        out.normalize();
        out
    }

    /// Multiplicative inverse via the norm: `a^-1 = prod_{k != 1} sigma_k(a) / N(a)`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.conductor;
        let mut others = Cyclotomic::one();
        for k in 2..m.max(2) as i64 {
            if (k as u32).gcd(&m) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).as_rational().expect("norm is rational");
        Some(others.scale(&norm.recip()))
    }

    /// A canonical key: the value embedded in `Q(zeta_m)` as coordinate strings.
    pub fn canonical_coordinates(&self, m: u32) -> Vec<String> {
        self.embed(m).coordinates().iter().map(|r| r.to_string()).collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclotomic::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic::add_same(&a, &b)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic::mul_same(&a, &b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, num: self.num.iter().map(|n| -n).collect(), den: self.den.clone() }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coordinates().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*z{}^{j}", self.conductor)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..60 {
            assert_eq!(cyclotomic_polynomial(m).len() as u32 - 1, euler_phi(m));
        }
    }

    #[test]
    fn basic_relations() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let z3_2 = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(&z3 + &z3_2, Cyclotomic::from_int(-1));
        let z4 = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(&z4 * &z4, Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root_of_unity(5, 1).conjugate(), Cyclotomic::root_of_unity(5, 4));
    }

    #[test]
    fn mixed_conductors() {
        // zeta_4 * zeta_3 = zeta_12^7
        let z = &Cyclotomic::root_of_unity(4, 1) * &Cyclotomic::root_of_unity(3, 1);
        assert_eq!(z, Cyclotomic::root_of_unity(12, 7));
        assert_eq!(z.conductor(), 12);
        // -1 is the same in every field
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::root_of_unity(10, 5), Cyclotomic::from_int(-1));
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for m in 2..40u32 {
            let s: Cyclotomic = (0..m as i64).map(|k| Cyclotomic::root_of_unity(m, k)).sum();
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn inverse() {
        let a = &Cyclotomic::from_int(2) + &Cyclotomic::root_of_unity(7, 3);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_none());
    }

    fn arb_cyc(m: u32) -> impl Strategy<Value = Cyclotomic> {
        prop::collection::vec(-5i64..5, m as usize).prop_map(move |v| Cyclotomic::from_power_counts(m, &v))
    }

    proptest! {
        #[test]
        fn embedding_is_coherent(a in arb_cyc(3), k in 1u32..4, l in 1u32..4) {
            let e = 3 * k;
            let m = e * l;
            prop_assert_eq!(a.embed(e).embed(m), a.embed(m));
            prop_assert_eq!(a.embed(m), a.clone());
        }

        #[test]
        fn field_laws(a in arb_cyc(12), b in arb_cyc(12), c in arb_cyc(4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a - &a).is_zero(), true);
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }
    }
}
