//! Artin and Swan characters of a ramification datum, conductors of
//! characters, break decompositions, and the Swan conductor computed three ways.

pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{int, Cyclotomic, Rational};
use crate::groups::{decompose, ClassFunction, GroupError, Homomorphism};
use crate::ramification::{RamificationDatum, RamificationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SwanError {
    #[error("Artin character has multiplicity {0} against an irreducible")]
    ArtinNotCharacter(String),
    #[error("Swan character has multiplicity {0} against an irreducible")]
    SwanNotCharacter(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("{quantity} disagrees across methods: {values:?}")]
    CrossCheckMismatch { quantity: String, values: Vec<String> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
}

impl SwanError {
    pub fn code(&self) -> &'static str {
        match self {
            SwanError::ArtinNotCharacter(_) => "swan.artin_not_character",
            SwanError::SwanNotCharacter(_) => "swan.swan_not_character",
            SwanError::NotACharacter(_) => "swan.not_a_character",
            SwanError::CrossCheckMismatch { .. } => "swan.cross_check_mismatch",
            SwanError::Group(e) => e.code(),
            SwanError::Ramification(e) => e.code(),
        }
    }
}

type Result<T> = std::result::Result<T, SwanError>;

fn mismatch(quantity: &str, values: &[Rational]) -> SwanError {
    SwanError::CrossCheckMismatch { quantity: quantity.into(), values: values.iter().map(|v| v.to_string()).collect() }
}

fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

fn check_character(d: &RamificationDatum, chi: &ClassFunction) -> Result<()> {
    if !chi.group().same_group(d.group()) {
        return Err(GroupError::GroupMismatch.into());
    }
    let dec = decompose(chi)?;
    if !dec.is_character {
        return Err(SwanError::NotACharacter(format!("{chi:?}")));
    }
    Ok(())
}

fn degree(chi: &ClassFunction) -> i64 {
    chi.degree().as_i64().expect("character degree is an integer")
}

/// `a_G(g) = -f i_G(g)` for `g != 1`, `a_G(1) = f sum_(g != 1) i_G(g)`.
pub fn artin_character(d: &RamificationDatum) -> Result<ClassFunction> {
    let a = artin_unchecked(d);
    ensure_character(&a, SwanError::ArtinNotCharacter)?;
    Ok(a)
}

fn artin_unchecked(d: &RamificationDatum) -> ClassFunction {
    let f = d.residue_degree() as i64;
    let total: i64 = d.i_values().iter().flatten().sum();
    ClassFunction::from_fn(d.group().clone(), |g| match d.i_g(g) {
        None => Cyclotomic::from_int(f * total),
        Some(i) => Cyclotomic::from_int(-f * i),
    })
}

/// `sw_G = a_G - (r_G - r_(G/G_0))`, the last term inflated to `G`.
pub fn swan_character(d: &RamificationDatum) -> Result<ClassFunction> {
    let s = swan_unchecked(d);
    ensure_character(&s, SwanError::SwanNotCharacter)?;
    Ok(s)
}

fn swan_unchecked(d: &RamificationDatum) -> ClassFunction {
    let a = artin_unchecked(d);
    let g = d.group();
    let f = d.residue_degree() as i64;
    let inertia = d.inertia();
    let tame_part = ClassFunction::from_fn(g.clone(), |x| {
        let r = if x == 0 { g.order() as i64 } else { 0 };
        let inflated = if inertia.binary_search(&x).is_ok() { f } else { 0 };
        Cyclotomic::from_int(r - inflated)
    });
    a.sub(&tame_part).expect("same group")
}

fn ensure_character(phi: &ClassFunction, err: fn(String) -> SwanError) -> Result<()> {
    let dec = decompose(phi)?;
    if let Some(bad) = dec.multiplicities.iter().find(|m| m.as_integer().is_none_or(|n| n < 0.into())) {
        return Err(err(bad.to_string()));
    }
    Ok(())
}

/// `<phi, chi>` as a rational; both are characters here, so the pairing is rational.
fn pairing(phi: &ClassFunction, chi: &ClassFunction) -> Result<Rational> {
    let v = phi.inner_product(chi)?;
    v.as_rational().ok_or_else(|| SwanError::NotACharacter(format!("pairing {v} is irrational")))
}

/// `sum_(i >= start) |G_i|/|G_0| (chi(1) - dim V^(G_i))`
fn codimension_sum(d: &RamificationDatum, chi: &ClassFunction, start: i64) -> Result<Rational> {
    let n = degree(chi);
    let mut acc = Rational::zero();
    let mut i = start;
    loop {
        let gi = d.lower_group(&int(i));
        if gi.len() == 1 {
            break;
        }
        acc += d.relative_size(i) * int(n - chi.fixed_space_dim(&gi)?);
        i += 1;
    }
    Ok(acc)
}

/// The Artin conductor `f(chi)`, as `<a_G, chi>` and as a codimension sum.
pub fn conductor_f(d: &RamificationDatum, chi: &ClassFunction) -> Result<i64> {
    check_character(d, chi)?;
    let by_pairing = pairing(&artin_unchecked(d), chi)?;
    let by_codim = codimension_sum(d, chi, 0)?;
    if by_pairing != by_codim {
        return Err(mismatch("Artin conductor", &[by_pairing, by_codim]));
    }
    to_i64(&by_pairing).filter(|v| *v >= 0).ok_or_else(|| mismatch("Artin conductor integrality", &[by_pairing]))
}

/// Multiplicities `x -> rank M(x)` of the break decomposition.
#[derive(Clone, PartialEq, Eq)]
pub struct BreakProfile {
    pub breaks: BTreeMap<Rational, i64>,
    pub total_rank: i64,
}

impl BreakProfile {
    /// `sum x rank M(x)`
    pub fn swan(&self) -> Rational {
        self.breaks.iter().map(|(x, m)| x * int(*m)).fold(Rational::zero(), |a, b| a + b)
    }

    /// Multiset union of two profiles.
    pub fn union(&self, other: &BreakProfile) -> BreakProfile {
        let mut breaks = self.breaks.clone();
        for (x, m) in &other.breaks {
            *breaks.entry(x.clone()).or_insert(0) += m;
        }
        BreakProfile { breaks, total_rank: self.total_rank + other.total_rank }
    }
}

impl fmt::Debug for BreakProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (x, m)) in self.breaks.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}: {m}")?;
        }
        write!(f, "}}")
    }
}

/// The break points `0, x_1 < x_2 < ...` with, for each, the pair `(G^x, G^(x+))`.
pub fn break_groups(d: &RamificationDatum) -> Vec<(Rational, Vec<usize>, Vec<usize>)> {
    let jumps = d.positive_jumps();
    let mut points = vec![Rational::zero()];
    points.extend(jumps.iter().cloned());
    let mut out = Vec::new();
    for (k, x) in points.iter().enumerate() {
        let eps = match points.get(k + 1) {
            Some(next) => (next - x) / int(2),
            None => int(1),
        };
        out.push((x.clone(), d.upper_group(x), d.upper_group(&(x + eps))));
    }
    out
}

/// `mult(0) = dim V^(G^(0+))`, `mult(x) = dim V^(G^(x+)) - dim V^(G^x)` at positive jumps.
pub fn break_profile(d: &RamificationDatum, chi: &ClassFunction) -> Result<BreakProfile> {
    check_character(d, chi)?;
    let mut breaks = BTreeMap::new();
    for (x, at, after) in break_groups(d) {
        let m = if x.is_zero() { chi.fixed_space_dim(&after)? } else { chi.fixed_space_dim(&after)? - chi.fixed_space_dim(&at)? };
        if m != 0 {
            breaks.insert(x, m);
        }
    }
    Ok(BreakProfile { breaks, total_rank: degree(chi) })
}

/// The three computations of the Swan conductor: break profile, codimension sum
/// over `G_i` for `i >= 1`, and `<sw_G, chi>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwanMethods {
    pub from_breaks: Rational,
    pub from_codimensions: Rational,
    pub from_character: Rational,
}

impl SwanMethods {
    pub fn agree(&self) -> bool {
        self.from_breaks == self.from_codimensions && self.from_codimensions == self.from_character
    }

    pub fn as_vec(&self) -> Vec<Rational> {
        vec![self.from_breaks.clone(), self.from_codimensions.clone(), self.from_character.clone()]
    }
}

pub fn swan_methods(d: &RamificationDatum, chi: &ClassFunction) -> Result<SwanMethods> {
    let from_breaks = break_profile(d, chi)?.swan();
    let from_codimensions = codimension_sum(d, chi, 1)?;
    let from_character = pairing(&swan_unchecked(d), chi)?;
    Ok(SwanMethods { from_breaks, from_codimensions, from_character })
}

/// The Swan conductor, asserting that the three methods agree on a non-negative integer.
pub fn swan_conductor(d: &RamificationDatum, chi: &ClassFunction) -> Result<i64> {
    let m = swan_methods(d, chi)?;
    if !m.agree() {
        return Err(mismatch("Swan conductor", &m.as_vec()));
    }
    to_i64(&m.from_character).filter(|v| *v >= 0).ok_or_else(|| mismatch("Swan conductor integrality", &m.as_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionReport {
    /// `a_G` is induced from `a_(G_0)`.
    pub artin: bool,
    /// `sw_G` is induced from `sw_(G_0)`.
    pub swan: bool,
}

impl InductionReport {
    pub fn all_pass(&self) -> bool {
        self.artin && self.swan
    }
}

pub fn induction_identity_check(d: &RamificationDatum) -> Result<InductionReport> {
    let g0 = d.inertia();
    let inner = d.subgroup_datum(&g0)?;
    let alpha = Homomorphism::new(inner.group().clone(), d.group().clone(), g0)?;
    let artin = artin_unchecked(&inner).induce(&alpha)? == artin_unchecked(d);
    let swan = swan_unchecked(&inner).induce(&alpha)? == swan_unchecked(d);
    Ok(InductionReport { artin, swan })
}

/// Restriction of a character along the inclusion of the datum's group.
pub fn restrict_to(d: &RamificationDatum, chi: &ClassFunction, embedding: &[usize]) -> Result<ClassFunction> {
    let alpha = Homomorphism::new(d.group().clone(), chi.group().clone(), embedding.to_vec())?;
    Ok(chi.restrict(&alpha)?)
}

/// All characters `sum m_i chi_i` with `0 <= m_i <= bound`, for small tests.
pub fn small_characters(group: &Arc<crate::groups::FiniteGroup>, bound: i64) -> Result<Vec<ClassFunction>> {
    let irr = crate::groups::irreducible_characters(group)?;
    let mut out = vec![ClassFunction::zero(group.clone())];
    for chi in &irr {
        let mut next = Vec::new();
        for base in &out {
            for m in 0..=bound {
                next.push(base.add(&chi.scale_int(m))?);
            }
        }
        out = next;
    }
    Ok(out)
}
