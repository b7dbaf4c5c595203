//! Totally ramified Galois extensions `L = K(y)` of `K = F_q((t))`.
//!
//! Elements of `L` are coordinate vectors in the basis `1, y, ..., y^(e-1)`.
//! Because `gcd(w, e) = 1` for `w = v_L(y)`, the terms `a_i y^i` have pairwise
//! distinct valuations `e v_K(a_i) + w i` modulo `e`, so the valuation of a sum
//! is the minimum of these and no cancellation can hide.

use std::sync::Arc;

use num_integer::Integer;

use crate::algebra::finite_field::{is_prime, prime_factors};
use crate::algebra::laurent::EXACT_PRECISION;
use crate::algebra::linalg::{berkowitz, determinant};
use crate::algebra::{AlgebraError, FiniteField, Fq, LaurentSeries};
use crate::groups::FiniteGroup;

pub const DEFAULT_PRECISION: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalFieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("F_{q} does not contain the {e}-th roots of unity")]
    RootsOfUnityMissing { q: u32, e: usize },
    #[error("tame degree {e} is divisible by the characteristic {p}")]
    WildDegree { p: u32, e: usize },
    #[error("pole order {m} is divisible by the characteristic {p}")]
    WildPoleOrder { p: u32, m: i64 },
    #[error("F_{q} does not contain F_{p}^{r}")]
    SubfieldMissing { q: u32, p: u32, r: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl LocalFieldError {
    pub fn code(&self) -> &'static str {
        match self {
            LocalFieldError::NotPrimePower(_) => "local_field.not_prime_power",
            LocalFieldError::RootsOfUnityMissing { .. } => "local_field.roots_of_unity_missing",
            LocalFieldError::WildDegree { .. } => "local_field.wild_degree",
            LocalFieldError::WildPoleOrder { .. } => "local_field.wild_pole_order",
            LocalFieldError::SubfieldMissing { .. } => "local_field.subfield_missing",
            LocalFieldError::InvalidParameter(_) => "local_field.invalid_parameter",
            LocalFieldError::PreconditionFailed(_) => "local_field.precondition_failed",
            LocalFieldError::CrossCheckMismatch(_) => "local_field.cross_check_mismatch",
            LocalFieldError::Algebra(e) => e.code(),
        }
    }

    pub fn is_insufficient_precision(&self) -> bool {
        matches!(self, LocalFieldError::Algebra(AlgebraError::InsufficientPrecision { .. }))
    }
}

type Result<T> = std::result::Result<T, LocalFieldError>;

/// `q = p^n`
pub fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    let f = prime_factors(q as u64);
    if f.len() != 1 || !is_prime(f[0]) {
        return None;
    }
    let p = f[0] as u32;
    let (mut n, mut x) = (0, q);
    while x > 1 {
        x /= p;
        n += 1;
    }
    Some((p, n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionKind {
    /// `y^e = t`
    Tame { e: usize },
    /// `y^(p^r) - y = c t^-m`
    ArtinSchreier { r: u32, m: i64, c: Fq },
}

/// An element of `L`, as coordinates in the basis `1, y, ..., y^(e-1)`.
#[derive(Debug, Clone)]
pub struct ExtensionElement {
    coords: Vec<LaurentSeries>,
}

impl ExtensionElement {
    pub fn coordinates(&self) -> &[LaurentSeries] {
        &self.coords
    }
}

#[derive(Debug, Clone)]
pub struct MonogenicExtension {
    field: Arc<FiniteField>,
    kind: ExtensionKind,
    e: usize,
    w: i64,
    /// `y^e = sum_i relation[i] y^i`
    relation: Vec<LaurentSeries>,
    group: Arc<FiniteGroup>,
    /// `sigma_g(y)^i` for every group element `g` and `i < e`.
    automorphism_powers: Vec<Vec<ExtensionElement>>,
    precision: i64,
}

fn field_of_order(q: u32) -> Result<Arc<FiniteField>> {
    let (p, n) = split_prime_power(q).ok_or(LocalFieldError::NotPrimePower(q))?;
    Ok(Arc::new(FiniteField::new(p, n)?))
}

/// `y^e = t` over `F_q((t))`; the automorphism with label `j` sends `y` to `zeta^j y`.
pub fn build_tame(q: u32, e: usize) -> Result<MonogenicExtension> {
    build_tame_over(field_of_order(q)?, e)
}

pub fn build_tame_over(field: Arc<FiniteField>, e: usize) -> Result<MonogenicExtension> {
    let (p, q) = (field.characteristic(), field.order());
    if e == 0 {
        return Err(LocalFieldError::InvalidParameter("degree must be positive".into()));
    }
    if (e as u32).is_multiple_of(p) {
        return Err(LocalFieldError::WildDegree { p, e });
    }
    let zeta = field.primitive_root_of_unity(e as u32).ok_or(LocalFieldError::RootsOfUnityMissing { q, e })?;
    let mut relation = vec![LaurentSeries::exact(field.clone(), 0, vec![]); e];
    relation[0] = LaurentSeries::exact_monomial(field.clone(), Fq::ONE, 1);
    let images: Vec<ExtensionElement> = (0..e)
        .map(|j| {
            let mut coords = vec![LaurentSeries::exact(field.clone(), 0, vec![]); e];
            if e == 1 {
                coords[0] = LaurentSeries::exact_monomial(field.clone(), Fq::ONE, 1);
            } else {
                coords[1] = LaurentSeries::exact_monomial(field.clone(), field.pow(zeta, j as i64), 0);
            }
            ExtensionElement { coords }
        })
        .collect();
    MonogenicExtension::assemble(field, ExtensionKind::Tame { e }, e, 1, relation, FiniteGroup::cyclic(e), images)
}

/// `y^(p^r) - y = c t^-m`; the automorphism with label `sum d_i p^i` sends `y`
/// to `y + sum d_i gamma^i`, with `gamma` the canonical generator of `F_(p^r)^x`.
pub fn build_artin_schreier(q: u32, r: u32, m: i64, c: u32) -> Result<MonogenicExtension> {
    let field = field_of_order(q)?;
    let c = field.element(c)?;
    build_artin_schreier_over(field, r, m, c)
}

pub fn build_artin_schreier_over(field: Arc<FiniteField>, r: u32, m: i64, c: Fq) -> Result<MonogenicExtension> {
    let (p, q) = (field.characteristic(), field.order());
    if r == 0 || m <= 0 {
        return Err(LocalFieldError::InvalidParameter("need r >= 1 and m >= 1".into()));
    }
    if c.is_zero() {
        return Err(LocalFieldError::InvalidParameter("c must be nonzero".into()));
    }
    if m % p as i64 == 0 {
        return Err(LocalFieldError::WildPoleOrder { p, m });
    }
    if field.subfield(r).is_none() {
        return Err(LocalFieldError::SubfieldMissing { q, p, r });
    }
    let e = (p as usize).pow(r);
    let gamma = if e == 2 { Fq::ONE } else { field.pow(field.generator(), ((q - 1) / (e as u32 - 1)) as i64) };
    let mut relation = vec![LaurentSeries::exact(field.clone(), 0, vec![]); e];
    relation[0] = LaurentSeries::exact_monomial(field.clone(), c, -m);
    relation[1] = LaurentSeries::exact_monomial(field.clone(), Fq::ONE, 0);
    let images: Vec<ExtensionElement> = (0..e)
        .map(|code| {
            let (mut a, mut rest, mut basis) = (Fq::ZERO, code, Fq::ONE);
            for _ in 0..r {
                let digit = field.from_int((rest % p as usize) as i64);
                a = field.add(a, field.mul(digit, basis));
                basis = field.mul(basis, gamma);
                rest /= p as usize;
            }
            let mut coords = vec![LaurentSeries::exact(field.clone(), 0, vec![]); e];
            coords[0] = LaurentSeries::exact(field.clone(), 0, vec![a]);
            coords[1] = LaurentSeries::exact_monomial(field.clone(), Fq::ONE, 0);
            ExtensionElement { coords }
        })
        .collect();
    let group = FiniteGroup::elementary_abelian(p as usize, r);
    MonogenicExtension::assemble(field, ExtensionKind::ArtinSchreier { r, m, c }, e, -m, relation, group, images)
}

impl MonogenicExtension {
    fn assemble(
        field: Arc<FiniteField>,
        kind: ExtensionKind,
        e: usize,
        w: i64,
        relation: Vec<LaurentSeries>,
        group: FiniteGroup,
        images: Vec<ExtensionElement>,
    ) -> Result<Self> {
        let mut ext = MonogenicExtension {
            field,
            kind,
            e,
            w,
            relation,
            group: Arc::new(group),
            automorphism_powers: Vec::new(),
            precision: DEFAULT_PRECISION,
        };
        let powers = images
            .iter()
            .map(|img| {
                let mut out = vec![ext.exact_monomial(Fq::ONE, 0, 0)];
                for _ in 1..e {
                    out.push(ext.mul(out.last().unwrap(), img)?);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        ext.automorphism_powers = powers;
        ext.check_automorphisms()?;
        Ok(ext)
    }

    /// Each image of `y` must satisfy the defining relation, and composing
    /// automorphisms must follow the group table.
    fn check_automorphisms(&self) -> Result<()> {
        let y = self.y();
        for g in self.group.elements() {
            let img = self.apply(g, &y)?;
            let lhs = self.pow(&img, self.e as u64)?;
            let rhs = self.sum_with_coefficients(&self.relation, &self.automorphism_powers[g])?;
            if !self.sub(&lhs, &rhs)?.coords.iter().all(LaurentSeries::is_zero_to_precision) {
                return Err(LocalFieldError::CrossCheckMismatch(format!("image of y under {g} violates the relation")));
            }
            for h in self.group.elements() {
                let gh = self.apply(g, &self.apply(h, &y)?)?;
                let direct = self.apply(self.group.mul(g, h), &y)?;
                if !self.sub(&gh, &direct)?.coords.iter().all(LaurentSeries::is_zero_to_precision) {
                    return Err(LocalFieldError::CrossCheckMismatch(format!(
                        "automorphisms {g} and {h} do not compose per the group table"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same extension with a different working precision (terms beyond the valuation).
    pub fn with_precision(mut self, precision: i64) -> Self {
        self.precision = precision.max(1);
        self
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn base_field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn kind(&self) -> &ExtensionKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn residue_degree(&self) -> usize {
        1
    }

    pub fn generator_valuation(&self) -> i64 {
        self.w
    }

    pub fn relation(&self) -> &[LaurentSeries] {
        &self.relation
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    fn zero_coords(&self, prec_l: i64) -> Vec<LaurentSeries> {
        (0..self.e).map(|i| LaurentSeries::zero(self.field.clone(), self.k_precision_for(prec_l, i))).collect()
    }

    /// Least K-precision of coordinate `i` that pins the element down modulo `m_L^prec_l`.
    fn k_precision_for(&self, prec_l: i64, i: usize) -> i64 {
        if prec_l >= EXACT_PRECISION {
            return EXACT_PRECISION;
        }
        Integer::div_ceil(&(prec_l - self.w * i as i64), &(self.e as i64))
    }

    /// `c t^a y^b`, known exactly.
    pub fn exact_monomial(&self, c: Fq, a: i64, b: usize) -> ExtensionElement {
        let mut coords = vec![LaurentSeries::exact(self.field.clone(), 0, vec![]); self.e];
        coords[b] = LaurentSeries::exact_monomial(self.field.clone(), c, a);
        ExtensionElement { coords }
    }

    /// `c t^a y^b` known modulo `m_L^(v + e P)` for the working precision `P`.
    pub fn monomial(&self, c: Fq, a: i64, b: usize) -> ExtensionElement {
        let v = self.e as i64 * a + self.w * b as i64;
        let prec_l = v + self.e as i64 * self.precision;
        let mut coords = self.zero_coords(prec_l);
        coords[b] = LaurentSeries::monomial(self.field.clone(), c, a, self.k_precision_for(prec_l, b) - a);
        ExtensionElement { coords }
    }

    /// The generator `y`; for `e = 1` the basis is just `1` and `y = t`.
    pub fn y(&self) -> ExtensionElement {
        if self.e == 1 {
            self.exact_monomial(Fq::ONE, 1, 0)
        } else {
            self.exact_monomial(Fq::ONE, 0, 1)
        }
    }

    /// An element of `K` viewed in `L`.
    pub fn from_base(&self, a: &LaurentSeries) -> ExtensionElement {
        let prec_l = if a.is_exact() { EXACT_PRECISION } else { self.e as i64 * a.precision() };
        let mut coords = self.zero_coords(prec_l);
        coords[0] = a.clone();
        ExtensionElement { coords }
    }

    pub fn from_coordinates(&self, coords: Vec<LaurentSeries>) -> Result<ExtensionElement> {
        if coords.len() != self.e {
            return Err(LocalFieldError::InvalidParameter(format!("expected {} coordinates", self.e)));
        }
        Ok(ExtensionElement { coords })
    }

    pub fn add(&self, a: &ExtensionElement, b: &ExtensionElement) -> Result<ExtensionElement> {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x.add(y)).collect::<std::result::Result<_, _>>()?;
        Ok(ExtensionElement { coords })
    }

    pub fn neg(&self, a: &ExtensionElement) -> ExtensionElement {
        ExtensionElement { coords: a.coords.iter().map(LaurentSeries::neg).collect() }
    }

    pub fn sub(&self, a: &ExtensionElement, b: &ExtensionElement) -> Result<ExtensionElement> {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by an element of `K`.
    pub fn scale(&self, s: &LaurentSeries, a: &ExtensionElement) -> Result<ExtensionElement> {
        let coords = a.coords.iter().map(|x| s.mul(x)).collect::<std::result::Result<_, _>>()?;
        Ok(ExtensionElement { coords })
    }

    pub fn mul(&self, a: &ExtensionElement, b: &ExtensionElement) -> Result<ExtensionElement> {
        let e = self.e;
        let mut wide: Vec<Option<LaurentSeries>> = vec![None; 2 * e - 1];
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                let term = x.mul(y)?;
                wide[i + j] = Some(match wide[i + j].take() {
                    None => term,
                    Some(acc) => acc.add(&term)?,
                });
            }
        }
        for k in (e..2 * e - 1).rev() {
            let top = wide[k].take().unwrap();
            for (i, r) in self.relation.iter().enumerate() {
                if r.is_zero_to_precision() {
                    continue;
                }
                let term = top.mul(r)?;
                let slot = &mut wide[k - e + i];
                *slot = Some(slot.take().unwrap().add(&term)?);
            }
        }
        Ok(ExtensionElement { coords: wide.into_iter().take(e).map(Option::unwrap).collect() })
    }

    pub fn pow(&self, a: &ExtensionElement, k: u64) -> Result<ExtensionElement> {
        let mut acc = self.exact_monomial(Fq::ONE, 0, 0);
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    fn sum_with_coefficients(&self, coeffs: &[LaurentSeries], basis: &[ExtensionElement]) -> Result<ExtensionElement> {
        let mut acc = ExtensionElement { coords: self.zero_coords(EXACT_PRECISION) };
        for (c, b) in coeffs.iter().zip(basis) {
            acc = self.add(&acc, &self.scale(c, b)?)?;
        }
        Ok(acc)
    }

    /// `sigma_g(x)`; automorphisms fix `K` coefficientwise.
    pub fn apply(&self, g: usize, x: &ExtensionElement) -> Result<ExtensionElement> {
        self.sum_with_coefficients(&x.coords, &self.automorphism_powers[g])
    }

    /// Bound below which the valuation of `x` is determined.
    pub fn precision_of(&self, x: &ExtensionElement) -> i64 {
        x.coords
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let n = a.precision();
                if n >= EXACT_PRECISION {
                    EXACT_PRECISION
                } else {
                    self.e as i64 * n + self.w * i as i64
                }
            })
            .min()
            .unwrap()
    }

    /// `v_L(x) = min_i (e v_K(a_i) + w i)`.
    pub fn valuation(&self, x: &ExtensionElement) -> Result<i64> {
        let bound = self.precision_of(x);
        let best = x.coords.iter().enumerate().filter_map(|(i, a)| a.valuation().map(|v| self.e as i64 * v + self.w * i as i64)).min();
        match best {
            Some(v) if v < bound => Ok(v),
            _ => Err(AlgebraError::InsufficientPrecision { precision: bound }.into()),
        }
    }

    /// Exponents `(a, b)` with `e a + w b = 1` and `0 <= b < e`.
    pub fn uniformizer_exponents(&self) -> (i64, usize) {
        let e = self.e as i64;
        if e == 1 {
            return (1, 0);
        }
        let b = (0..e).find(|b| (self.w * b - 1).rem_euclid(e) == 0).expect("gcd(w, e) = 1");
        ((1 - self.w * b) / e, b as usize)
    }

    /// The uniformizer `t^a y^b`.
    pub fn uniformizer(&self) -> ExtensionElement {
        let (a, b) = self.uniformizer_exponents();
        self.monomial(Fq::ONE, a, b)
    }

    /// `i_G(sigma) = v_L(sigma(pi) - pi)`; `None` stands for infinity at the identity.
    pub fn i_of(&self, g: usize) -> Result<Option<i64>> {
        self.i_of_with(g, &self.uniformizer())
    }

    /// `i_G` computed from a caller-supplied uniformizer.
    pub fn i_of_with(&self, g: usize, pi: &ExtensionElement) -> Result<Option<i64>> {
        if self.valuation(pi)? != 1 {
            return Err(LocalFieldError::PreconditionFailed("not a uniformizer".into()));
        }
        if g == 0 {
            return Ok(None);
        }
        let d = self.sub(&self.apply(g, pi)?, pi)?;
        Ok(Some(self.valuation(&d)?))
    }

    /// The norm `prod_sigma sigma(x)`, an element of `K`.
    pub fn norm(&self, x: &ExtensionElement) -> Result<LaurentSeries> {
        let mut acc = x.clone();
        for g in self.group.elements().skip(1) {
            acc = self.mul(&acc, &self.apply(g, x)?)?;
        }
        self.to_base(&acc)
    }

    fn to_base(&self, x: &ExtensionElement) -> Result<LaurentSeries> {
        if x.coords.iter().skip(1).any(|c| !c.is_zero_to_precision()) {
            return Err(LocalFieldError::CrossCheckMismatch("expected an element of K".into()));
        }
        Ok(x.coords[0].clone())
    }

    pub fn inverse(&self, x: &ExtensionElement) -> Result<ExtensionElement> {
        let mut others = self.exact_monomial(Fq::ONE, 0, 0);
        for g in self.group.elements().skip(1) {
            others = self.mul(&others, &self.apply(g, x)?)?;
        }
        let n = self.to_base(&self.mul(&others, x)?)?;
        self.scale(&n.inv()?, &others)
    }

    /// Trace of multiplication by `x`, computed from the defining relation.
    pub fn trace(&self, x: &ExtensionElement) -> Result<LaurentSeries> {
        let traces = self.basis_traces()?;
        let mut acc = LaurentSeries::zero(self.field.clone(), EXACT_PRECISION);
        for (a, tr) in x.coords.iter().zip(&traces) {
            acc = acc.add(&a.mul(tr)?)?;
        }
        Ok(acc)
    }

    /// `Tr(y^i)` for `i < e`, as traces of the multiplication matrices.
    fn basis_traces(&self) -> Result<Vec<LaurentSeries>> {
        (0..self.e)
            .map(|i| {
                let yi = self.exact_monomial(Fq::ONE, 0, i);
                let mut acc = LaurentSeries::zero(self.field.clone(), EXACT_PRECISION);
                for j in 0..self.e {
                    let prod = self.mul(&yi, &self.exact_monomial(Fq::ONE, 0, j))?;
                    acc = acc.add(&prod.coords[j])?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Matrix of multiplication by `x` in the `y`-basis (column `i` = `x y^i`).
    pub fn multiplication_matrix(&self, x: &ExtensionElement) -> Result<Vec<Vec<LaurentSeries>>> {
        let cols: Vec<ExtensionElement> = (0..self.e).map(|i| self.mul(x, &self.exact_monomial(Fq::ONE, 0, i))).collect::<Result<_>>()?;
        Ok((0..self.e).map(|r| (0..self.e).map(|c| cols[c].coords[r].clone()).collect()).collect())
    }

    fn exact_zero(&self) -> LaurentSeries {
        LaurentSeries::zero(self.field.clone(), EXACT_PRECISION)
    }

    fn exact_one(&self) -> LaurentSeries {
        LaurentSeries::exact_monomial(self.field.clone(), Fq::ONE, 0)
    }

    /// Valuation of the different three ways: `sum i_G`, `v_L(g'(pi))` for the
    /// minimal polynomial `g` of the uniformizer, and `v_K` of the discriminant
    /// of the basis `1, pi, ..., pi^(e-1)`.
    pub fn different_valuation(&self) -> Result<DifferentReport> {
        let from_i_g = self.group.elements().skip(1).map(|g| self.i_of(g).map(|v| v.unwrap())).sum::<Result<i64>>()?;

        let pi = self.uniformizer();
        let charpoly = berkowitz(&self.multiplication_matrix(&pi)?, &self.exact_zero(), &self.exact_one());
        // g'(pi) by Horner on k g_k
        let mut deriv = ExtensionElement { coords: self.zero_coords(EXACT_PRECISION) };
        for k in (1..charpoly.len()).rev() {
            let coeff = charpoly[k].scale(self.field.from_int(k as i64));
            deriv = self.add(&self.mul(&deriv, &pi)?, &self.from_base(&coeff))?;
        }
        let from_derivative = self.valuation(&deriv)?;

        let mut powers = vec![self.exact_monomial(Fq::ONE, 0, 0)];
        for _ in 1..(2 * self.e).saturating_sub(1) {
            powers.push(self.mul(powers.last().unwrap(), &pi)?);
        }
        let traces: Vec<LaurentSeries> = powers.iter().map(|x| self.trace(x)).collect::<Result<_>>()?;
        let matrix: Vec<Vec<LaurentSeries>> = (0..self.e).map(|i| (0..self.e).map(|j| traces[i + j].clone()).collect()).collect();
        let det = determinant(&matrix, &self.exact_zero(), &self.exact_one());
        let from_discriminant = det.valuation().ok_or(AlgebraError::InsufficientPrecision { precision: det.precision() })?;

        let report = DifferentReport { from_i_g, from_derivative, from_discriminant };
        if !report.agrees() {
            return Err(LocalFieldError::CrossCheckMismatch(format!(
                "different valuations disagree: {from_i_g}, {from_derivative}, {from_discriminant}"
            )));
        }
        Ok(report)
    }

    /// For `sigma` in `G_i`: whether `v_L(sigma(pi)/pi - 1) >= i`.
    pub fn unit_filtration_check(&self, g: usize, i: i64) -> Result<bool> {
        if g == 0 {
            return Ok(true);
        }
        let ig = self.i_of(g)?.unwrap();
        if ig < i + 1 {
            return Err(LocalFieldError::PreconditionFailed(format!("element {g} is not in G_{i} (i_G = {ig})")));
        }
        let pi = self.uniformizer();
        let ratio = self.mul(&self.apply(g, &pi)?, &self.inverse(&pi)?)?;
        let diff = self.sub(&ratio, &self.exact_monomial(Fq::ONE, 0, 0))?;
        Ok(self.valuation(&diff)? >= i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DifferentReport {
    pub from_i_g: i64,
    pub from_derivative: i64,
    pub from_discriminant: i64,
}

impl DifferentReport {
    pub fn agrees(&self) -> bool {
        self.from_i_g == self.from_derivative && self.from_derivative == self.from_discriminant
    }

    pub fn value(&self) -> i64 {
        self.from_i_g
    }
}
