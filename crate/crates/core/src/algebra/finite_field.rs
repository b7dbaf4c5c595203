//! Finite fields `F_q = F_p[x]/(f)` with table-driven multiplication.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of the reduced polynomial representative (digit `i` is the
//! coefficient of `x^i`). The zero element is `0` and the one element is `1`.

use std::fmt;

use super::AlgebraError;

/// Largest field order the table-driven representation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of some [`FiniteField`], in the integer encoding above.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    n: u32,
    q: u32,
    /// Monic modulus over `F_p`, ascending coefficients, length `n + 1`.
    modulus: Vec<u32>,
    /// Smallest encoded generator of the multiplicative group.
    generator: Fq,
    /// `exp[k] = generator^k` for `k < 2(q - 1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField").field("p", &self.p).field("n", &self.n).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    /// `F_{p^n}` presented by the least monic irreducible of degree `n`.
    ///
    /// Candidates are enumerated as integers `k < p^n`, where digit `i` of
    /// `k` is the coefficient of `x^i`; the first irreducible `x^n + k(x)`
    /// wins, so the choice is reproducible without a Conway table.
    pub fn new(p: u32, n: u32) -> Result<Self, AlgebraError> {
        let q = check_order(p, n)?;
        for k in 0..q {
            let mut modulus = digits(k, p, n);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Self::with_modulus(p, modulus);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `F_{p^n}` with a caller-supplied monic modulus (ascending coefficients).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(AlgebraError::InvalidModulus("modulus must be monic of degree >= 1".into()));
        }
        let n = (modulus.len() - 1) as u32;
        let q = check_order(p, n)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::InvalidModulus("coefficients must be reduced mod p".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(AlgebraError::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }

        let slow_mul = |a: u32, b: u32| -> u32 {
            let pa = digits(a, p, n);
            let pb = digits(b, p, n);
            let prod = poly_mul_mod(&pa, &pb, &modulus, p);
            undigits(&prod, p)
        };

        // Smallest element whose order is exactly q - 1.
        let order = q - 1;
        let primes = prime_factors(order as u64);
        let mut generator = 0;
        for cand in 1..q {
            let ok = primes.iter().all(|&r| {
                let e = order / r as u32;
                let mut acc = 1;
                let mut base = cand;
                let mut k = e;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = slow_mul(acc, base);
                    }
                    base = slow_mul(base, base);
                    k >>= 1;
                }
                acc != 1
            });
            if ok {
                generator = cand;
                break;
            }
        }
        if q == 2 {
            generator = 1;
        }

        let len = 2 * order as usize;
        let mut exp = Vec::with_capacity(len.max(1));
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for k in 0..order {
            exp.push(acc);
            log[acc as usize] = k;
            acc = slow_mul(acc, generator);
        }
        for k in 0..order as usize {
            exp.push(exp[k]);
        }

        Ok(FiniteField { p, n, q, modulus, generator: Fq(generator), exp, log })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Fq {
        Fq(k.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given encoding; fails if the encoding is out of range.
    pub fn element(&self, code: u32) -> Result<Fq, AlgebraError> {
        if code < self.q {
            Ok(Fq(code))
        } else {
            Err(AlgebraError::ElementOutOfRange { code, order: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if self.n == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 {
            return a;
        }
        if self.n == 1 {
            return Fq(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            x /= self.p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fq(self.exp[k as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        let order = self.q - 1;
        let k = (order - self.log[a.0 as usize]) % order;
        Some(Fq(self.exp[k as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, k: i64) -> Fq {
        if a.is_zero() {
            return if k == 0 { Fq::ONE } else { Fq::ZERO };
        }
        let order = (self.q - 1) as i64;
        let e = (self.log[a.0 as usize] as i64 * k.rem_euclid(order)).rem_euclid(order);
        Fq(self.exp[e as usize])
    }

    /// The Frobenius automorphism `a -> a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as i64)
    }

    /// The canonical primitive `e`-th root of unity `g^((q-1)/e)`.
    pub fn primitive_root_of_unity(&self, e: u32) -> Option<Fq> {
        if e == 0 || !(self.q - 1).is_multiple_of(e) {
            return None;
        }
        Some(self.pow(self.generator, ((self.q - 1) / e) as i64))
    }

    /// Elements of the subfield `F_{p^r}`, in increasing encoding order.
    pub fn subfield(&self, r: u32) -> Option<Vec<Fq>> {
        if r == 0 || !self.n.is_multiple_of(r) {
            return None;
        }
        let size = self.p.pow(r) as i64;
        Some(self.elements().filter(|&a| self.pow(a, size) == a).collect())
    }
}

fn check_order(p: u32, n: u32) -> Result<u32, AlgebraError> {
    if p < 2 || !is_prime(p as u64) {
        return Err(AlgebraError::NotPrime(p));
    }
    if n == 0 {
        return Err(AlgebraError::InvalidModulus("degree must be positive".into()));
    }
    let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER);
    match q {
        Some(q) => Ok(q as u32),
        None => Err(AlgebraError::FieldTooLarge { p, n }),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut k: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(k % p);
        k /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// Dense polynomials over F_p, ascending coefficients, used only while
// building the field tables.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let v = (r[shift + i] as u64 + (p as u64 - c) * mi as u64 % p as u64) % p as u64;
            r[shift + i] = v as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    poly_rem(&out, m, p)
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^k) mod m`.
fn frobenius_power(m: &[u32], p: u32, k: u32) -> Vec<u32> {
    let mut acc = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        // acc <- acc^p by square-and-multiply
        let mut result = vec![1];
        let mut base = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = poly_mul_mod(&result, &base, m, p);
            }
            base = poly_mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc = result;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = (m.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    if poly_sub(&frobenius_power(m, p, n), &x, p) != poly_rem(&[], m, p) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = poly_sub(&frobenius_power(m, p, n / r as u32), &x, p);
        poly_gcd(m, &h, p).len() == 1
    })
}
