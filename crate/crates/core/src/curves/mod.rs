//! Galois covers of curves described by local ramification data at the
//! boundary: Hurwitz, Grothendieck-Ogg-Shafarevich, Swan classes, Swan
//! divisors and the complexity bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{int, Rational};
use crate::groups::{ClassFunction, FiniteGroup, GroupError, Homomorphism};
use crate::ramification::RamificationDatum;
use crate::swan::{swan_conductor, SwanError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("inconsistent cover: {0}")]
    InconsistentCover(String),
    #[error("the identity has no proper intersection number")]
    IdentityNotProper,
    #[error("divisor is supported off the boundary at {0}")]
    SupportMismatch(String),
    #[error("divisor is not effective at {0}")]
    NotEffective(String),
    #[error("{quantity} disagrees across methods: {values:?}")]
    CrossCheckMismatch { quantity: String, values: Vec<String> },
    #[error(transparent)]
    Swan(#[from] SwanError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl CurveError {
    pub fn code(&self) -> &'static str {
        match self {
            CurveError::InvalidCover(_) => "curves.invalid_cover",
            CurveError::InconsistentCover(_) => "curves.inconsistent_cover",
            CurveError::IdentityNotProper => "curves.identity_not_proper",
            CurveError::SupportMismatch(_) => "curves.support_mismatch",
            CurveError::NotEffective(_) => "curves.not_effective",
            CurveError::CrossCheckMismatch { .. } => "curves.cross_check_mismatch",
            CurveError::Swan(e) => e.code(),
            CurveError::Group(e) => e.code(),
        }
    }
}

type Result<T> = std::result::Result<T, CurveError>;

/// A boundary point `x` of degree `[k(x):k]` with the datum of the decomposition
/// group at one point above it; `embedding[s]` is the image in `G` of element `s`.
#[derive(Debug, Clone)]
pub struct BoundaryPoint {
    pub name: String,
    pub degree: i64,
    pub datum: RamificationDatum,
    embedding: Homomorphism,
}

impl BoundaryPoint {
    pub fn new(
        name: impl Into<String>,
        degree: i64,
        datum: RamificationDatum,
        group: &Arc<FiniteGroup>,
        embedding: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if degree < 1 {
            return Err(CurveError::InvalidCover(format!("point {name} has degree {degree}")));
        }
        if datum.residue_degree() != 1 {
            return Err(CurveError::InvalidCover(format!("local datum at {name} is not totally ramified")));
        }
        let embedding = Homomorphism::new(datum.group().clone(), group.clone(), embedding)?;
        if embedding.kernel().len() != 1 {
            return Err(CurveError::InvalidCover(format!("embedding at {name} is not injective")));
        }
        Ok(BoundaryPoint { name, degree, datum, embedding })
    }

    /// The decomposition group `D` as a subgroup of `G`.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.embedding.map().to_vec();
        v.sort_unstable();
        v
    }

    pub fn embedding(&self) -> &Homomorphism {
        &self.embedding
    }

    /// Number of geometric points above `x`: `|G|/|D|` per point of `x` over `k-bar`.
    pub fn points_above(&self) -> i64 {
        (self.embedding.target.order() / self.datum.group().order()) as i64
    }

    /// `v_(x')(D_(C'/C)) = sum_(s != 1) i_D(s)`.
    pub fn different(&self) -> i64 {
        self.datum.i_values().iter().flatten().sum()
    }

    /// `i_D` at the element of `D` mapping to `g`, if any.
    fn local_i(&self, g: usize) -> Option<Option<i64>> {
        self.embedding.map().iter().position(|&x| x == g).map(|s| self.datum.i_g(s))
    }

    /// Left cosets `tau D` as their representatives `tau`, one per point above `x`.
    fn coset_representatives(&self) -> Vec<usize> {
        self.embedding.target.left_cosets(&self.image()).iter().map(|c| c[0]).collect()
    }
}

/// A `G`-cover of a genus `g` curve, unramified away from the boundary, with a
/// character `chi` of `G` giving the sheaf.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    pub base_genus: i64,
    pub group: Arc<FiniteGroup>,
    pub boundary: Vec<BoundaryPoint>,
    pub character: ClassFunction,
}

impl CoverSpec {
    pub fn new(base_genus: i64, group: Arc<FiniteGroup>, boundary: Vec<BoundaryPoint>, character: ClassFunction) -> Result<Self> {
        if base_genus < 0 {
            return Err(CurveError::InvalidCover(format!("negative genus {base_genus}")));
        }
        if !character.group().same_group(&group) {
            return Err(GroupError::GroupMismatch.into());
        }
        let mut names = std::collections::BTreeSet::new();
        for x in &boundary {
            if !x.embedding.target.same_group(&group) {
                return Err(GroupError::GroupMismatch.into());
            }
            if !names.insert(x.name.clone()) {
                return Err(CurveError::InvalidCover(format!("duplicate boundary point {}", x.name)));
            }
        }
        Ok(CoverSpec { base_genus, group, boundary, character })
    }

    pub fn with_character(&self, character: ClassFunction) -> Result<Self> {
        Self::new(self.base_genus, self.group.clone(), self.boundary.clone(), character)
    }

    pub fn point(&self, name: &str) -> Option<&BoundaryPoint> {
        self.boundary.iter().find(|x| x.name == name)
    }

    pub fn rank(&self) -> i64 {
        self.character.degree().as_i64().expect("character degree is an integer")
    }

    /// Open part `U = C minus boundary`.
    pub fn chi_c_base(&self) -> i64 {
        chi_c_open(self.base_genus, &self.boundary.iter().map(|x| x.degree).collect::<Vec<_>>())
    }
}

/// `chi_c(U) = 2 - 2g - sum deg(x)`.
pub fn chi_c_open(genus: i64, degrees: &[i64]) -> i64 {
    2 - 2 * genus - degrees.iter().sum::<i64>()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzReport {
    pub genus: i64,
    pub chi: i64,
    pub chi_c_open: i64,
}

/// `2 - 2g' = |G| (2 - 2g) - sum_x deg(x) (|G|/|D_x|) v(D_x)`, and `chi_c(U')`
/// removing the `deg(x) |G|/|D_x|` points above each `x`.
pub fn hurwitz(cover: &CoverSpec) -> Result<HurwitzReport> {
    let n = cover.group.order() as i64;
    let chi = n * (2 - 2 * cover.base_genus) - cover.boundary.iter().map(|x| x.degree * x.points_above() * x.different()).sum::<i64>();
    if chi % 2 != 0 {
        return Err(CurveError::InconsistentCover(format!("2 - 2g' = {chi} is odd")));
    }
    let genus = (2 - chi) / 2;
    if genus < 0 {
        return Err(CurveError::InconsistentCover(format!("negative genus {genus} upstairs")));
    }
    let removed: i64 = cover.boundary.iter().map(|x| x.degree * x.points_above()).sum();
    Ok(HurwitzReport { genus, chi, chi_c_open: chi - removed })
}

/// `Swan_x(chi)` for the restriction of the cover's character to `D_x`.
pub fn local_swan(x: &BoundaryPoint, chi: &ClassFunction) -> Result<i64> {
    let res = chi.restrict(&x.embedding)?;
    Ok(swan_conductor(&x.datum, &res)?)
}

/// `chi(1) chi_c(U) - sum_x deg(x) Swan_x(chi)`.
pub fn gos_chi_c(cover: &CoverSpec) -> Result<i64> {
    let mut total = cover.rank() * cover.chi_c_base();
    for x in &cover.boundary {
        total -= x.degree * local_swan(x, &cover.character)?;
    }
    Ok(total)
}

/// The induced Swan class at a boundary point:
/// `sum_(y fixed by sigma) (1 - i_y(sigma))` for `sigma != 1`, and
/// `sum_y (1 + v_y(D)) - |G|` at the identity, with `y` running over `G/D`.
pub fn sw_class(cover: &CoverSpec, x: &BoundaryPoint, sigma: usize) -> i64 {
    let g = &cover.group;
    if sigma == 0 {
        return x.points_above() * (1 + x.different()) - g.order() as i64;
    }
    x.coset_representatives()
        .into_iter()
        .filter_map(|tau| x.local_i(g.conjugate(sigma, g.inv(tau))))
        .map(|i| 1 - i.expect("sigma is not the identity"))
        .sum()
}

/// `(1/|G|) sum_sigma sw_class(sigma) chi(sigma)`, checked against the local Swan conductor.
pub fn swan_via_class(cover: &CoverSpec, x: &BoundaryPoint, chi: &ClassFunction) -> Result<i64> {
    let g = &cover.group;
    let class = ClassFunction::from_fn(g.clone(), |s| crate::algebra::Cyclotomic::from_int(sw_class(cover, x, s)));
    let paired = class.inner_product(chi)?;
    let local = local_swan(x, chi)?;
    if paired.as_rational() != Some(int(local)) {
        return Err(CurveError::CrossCheckMismatch {
            quantity: format!("Swan conductor at {}", x.name),
            values: vec![paired.to_string(), local.to_string()],
        });
    }
    Ok(local)
}

fn fixed_point_sum(cover: &CoverSpec, sigma: usize, f: impl Fn(i64) -> i64) -> i64 {
    let g = &cover.group;
    cover
        .boundary
        .iter()
        .map(|x| {
            let s: i64 = x
                .coset_representatives()
                .into_iter()
                .filter_map(|tau| x.local_i(g.conjugate(sigma, g.inv(tau))))
                .map(|i| f(i.expect("sigma is not the identity")))
                .sum();
            x.degree * s
        })
        .sum()
}

/// `(Gamma_sigma . Delta) = sum_x deg(x) sum_(x' fixed by sigma) i_(x')(sigma)`.
pub fn intersection_number(cover: &CoverSpec, sigma: usize) -> Result<i64> {
    if sigma == 0 {
        return Err(CurveError::IdentityNotProper);
    }
    Ok(fixed_point_sum(cover, sigma, |i| i))
}

/// The same number as an average over all of `G`:
/// `sum_x deg(x) (1/|D|) sum_(tau : tau^-1 sigma tau in D) i_D(tau^-1 sigma tau)`.
pub fn intersection_number_direct(cover: &CoverSpec, sigma: usize) -> Result<i64> {
    if sigma == 0 {
        return Err(CurveError::IdentityNotProper);
    }
    let g = &cover.group;
    let mut total = Rational::zero();
    for x in &cover.boundary {
        let s: i64 = g.elements().filter_map(|tau| x.local_i(g.conjugate(sigma, g.inv(tau)))).map(|i| i.unwrap()).sum();
        total += int(x.degree * s) / int(x.datum.group().order() as i64);
    }
    if !total.is_integer() {
        return Err(CurveError::CrossCheckMismatch { quantity: "intersection number".into(), values: vec![total.to_string()] });
    }
    Ok(total.to_integer().try_into().expect("fits in i64"))
}

/// Intersection number recovered from the Swan class: fixed points minus `sw_class`.
pub fn intersection_via_swan_class(cover: &CoverSpec, sigma: usize) -> Result<i64> {
    if sigma == 0 {
        return Err(CurveError::IdentityNotProper);
    }
    let fixed = fixed_point_sum(cover, sigma, |_| 1);
    let sw: i64 = cover.boundary.iter().map(|x| x.degree * sw_class(cover, x, sigma)).sum();
    Ok(fixed - sw)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularReport {
    pub gos: i64,
    pub hurwitz: i64,
    pub passed: bool,
}

/// GOS with `chi = r_G` against `chi_c(U')` from Hurwitz.
pub fn regular_consistency(cover: &CoverSpec) -> Result<RegularReport> {
    let regular = cover.with_character(ClassFunction::regular(cover.group.clone()))?;
    let gos = gos_chi_c(&regular)?;
    let hurwitz = hurwitz(cover)?.chi_c_open;
    Ok(RegularReport { gos, hurwitz, passed: gos == hurwitz })
}

/// An effective divisor on the compactified base, by boundary point name.
pub type Divisor = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwanDivisor {
    pub entries: BTreeMap<String, i64>,
}

impl SwanDivisor {
    pub fn degree(&self, cover: &CoverSpec) -> i64 {
        self.entries.iter().map(|(n, m)| m * cover.point(n).map_or(1, |x| x.degree)).sum()
    }
}

pub fn swan_divisor(cover: &CoverSpec) -> Result<SwanDivisor> {
    let mut entries = BTreeMap::new();
    for x in &cover.boundary {
        entries.insert(x.name.clone(), local_swan(x, &cover.character)?);
    }
    Ok(SwanDivisor { entries })
}

/// Whether `Swan_x <= D_x` at every boundary point.
pub fn bounded_by(sd: &SwanDivisor, divisor: &Divisor) -> Result<bool> {
    for (name, m) in divisor {
        if *m < 0 {
            return Err(CurveError::NotEffective(name.clone()));
        }
        if *m != 0 && !sd.entries.contains_key(name) {
            return Err(CurveError::SupportMismatch(name.clone()));
        }
    }
    Ok(sd.entries.iter().all(|(name, s)| *s <= divisor.get(name).copied().unwrap_or(0)))
}

/// `deg D = sum_x deg(x) D_x`.
pub fn divisor_degree(cover: &CoverSpec, divisor: &Divisor) -> Result<i64> {
    divisor.iter().map(|(name, m)| cover.point(name).map(|x| x.degree * m).ok_or_else(|| CurveError::SupportMismatch(name.clone()))).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityReport {
    pub rank: i64,
    pub chi_c: i64,
    /// `C_d = 2g + 2d + 1`
    pub complexity: i64,
    pub passed: bool,
}

/// Checks `r - chi_c <= r C_d`.
pub fn complexity_bound_check(cover: &CoverSpec, d: i64) -> Result<ComplexityReport> {
    let rank = cover.rank();
    let chi_c = gos_chi_c(cover)?;
    let complexity = 2 * cover.base_genus + 2 * d + 1;
    Ok(ComplexityReport { rank, chi_c, complexity, passed: rank - chi_c <= rank * complexity })
}

/// The cover `y^p - y = x^m` of the affine line: group `Z/p`, one boundary point
/// `oo` with the Artin-Schreier datum of conductor `m`.
pub fn artin_schreier_cover(p: u32, m: i64, chi: Option<ClassFunction>) -> Result<CoverSpec> {
    let ext = crate::local_field::build_artin_schreier(p, 1, m, 1).map_err(|e| CurveError::InvalidCover(e.to_string()))?;
    let datum = crate::ramification::datum_from_extension(&ext).map_err(|e| CurveError::InvalidCover(e.to_string()))?;
    let g = datum.group().clone();
    let embedding = g.elements().collect();
    let inf = BoundaryPoint::new("inf", 1, datum, &g, embedding)?;
    let chi = chi.unwrap_or_else(|| ClassFunction::trivial(g.clone()));
    CoverSpec::new(0, g, vec![inf], chi)
}

/// The Kummer cover `y^e = x` of `P^1`, ramified at `0` and `oo`, as a cover of `G_m`.
pub fn kummer_cover(q: u32, e: usize, chi: Option<ClassFunction>) -> Result<CoverSpec> {
    let ext = crate::local_field::build_tame(q, e).map_err(|err| CurveError::InvalidCover(err.to_string()))?;
    let datum = crate::ramification::datum_from_extension(&ext).map_err(|err| CurveError::InvalidCover(err.to_string()))?;
    let g = datum.group().clone();
    let embedding: Vec<usize> = g.elements().collect();
    let zero = BoundaryPoint::new("0", 1, datum.clone(), &g, embedding.clone())?;
    let inf = BoundaryPoint::new("inf", 1, datum, &g, embedding)?;
    let chi = chi.unwrap_or_else(|| ClassFunction::trivial(g.clone()));
    CoverSpec::new(0, g, vec![zero, inf], chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::irreducible_characters;

    #[test]
    fn open_euler_characteristics() {
        assert_eq!(chi_c_open(0, &[1]), 1);
        assert_eq!(chi_c_open(0, &[1, 1]), 0);
        assert_eq!(chi_c_open(2, &[]), -2);
    }

    #[test]
    fn artin_schreier_line() {
        for (p, m) in [(3, 1), (3, 2), (3, 4), (5, 1), (5, 3)] {
            let cover = artin_schreier_cover(p, m, None).unwrap();
            let irr = irreducible_characters(&cover.group).unwrap();
            let psi = cover.with_character(irr[1].clone()).unwrap();
            assert_eq!(gos_chi_c(&psi).unwrap(), 1 - m);
            assert_eq!(gos_chi_c(&cover).unwrap(), 1);
            let h = hurwitz(&cover).unwrap();
            assert_eq!(h.genus, (p as i64 - 1) * (m - 1) / 2);
            assert!(regular_consistency(&cover).unwrap().passed);
            let sd = swan_divisor(&psi).unwrap();
            assert_eq!(sd.entries, BTreeMap::from([("inf".to_string(), m)]));
            assert!(bounded_by(&sd, &BTreeMap::from([("inf".to_string(), m)])).unwrap());
            assert!(!bounded_by(&sd, &BTreeMap::from([("inf".to_string(), m - 1)])).unwrap());
            let rep = complexity_bound_check(&psi, m).unwrap();
            assert_eq!(rep.complexity, 2 * m + 1);
            assert!(rep.passed);
        }
    }

    #[test]
    fn artin_schreier_classes() {
        let p = 5;
        let cover = artin_schreier_cover(p, 1, None).unwrap();
        let x = &cover.boundary[0];
        assert_eq!(sw_class(&cover, x, 1), -1);
        assert_eq!(sw_class(&cover, x, 0), p as i64 - 1);
        assert_eq!(intersection_number(&cover, 2).unwrap(), 2);
        assert_eq!(intersection_number_direct(&cover, 2).unwrap(), 2);
        assert_eq!(intersection_via_swan_class(&cover, 2).unwrap(), 2);
        assert_eq!(intersection_number(&cover, 0), Err(CurveError::IdentityNotProper));
        let total: i64 = cover.group.elements().map(|s| sw_class(&cover, x, s)).sum();
        assert_eq!(total, 0);
        for chi in irreducible_characters(&cover.group).unwrap() {
            swan_via_class(&cover, x, &chi).unwrap();
        }
        let r = ClassFunction::regular(cover.group.clone());
        assert_eq!(swan_via_class(&cover, x, &r).unwrap(), sw_class(&cover, x, 0));
    }

    #[test]
    fn kummer() {
        let cover = kummer_cover(7, 3, None).unwrap();
        let h = hurwitz(&cover).unwrap();
        assert_eq!(h.genus, 0);
        assert_eq!(h.chi_c_open, 0);
        let rep = regular_consistency(&cover).unwrap();
        assert_eq!((rep.gos, rep.hurwitz), (0, 0));
        assert_eq!(intersection_number(&cover, 1).unwrap(), 2);
        let sd = swan_divisor(&cover).unwrap();
        assert!(bounded_by(&sd, &Divisor::new()).unwrap());
        assert!(matches!(bounded_by(&sd, &BTreeMap::from([("1".to_string(), 2)])), Err(CurveError::SupportMismatch(_))));
        assert!(complexity_bound_check(&cover, 0).unwrap().passed);
    }

    #[test]
    fn unramified_and_split_points() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let chi = ClassFunction::regular(g.clone()).add(&ClassFunction::regular(g.clone())).unwrap();
        let cover = CoverSpec::new(1, g.clone(), vec![], chi.clone()).unwrap();
        let h = hurwitz(&cover).unwrap();
        assert_eq!(h.chi, 0);
        assert!(regular_consistency(&cover).unwrap().passed);
        let two = chi.restrict(&Homomorphism::inclusion(&g, &[0, 2]).unwrap()).unwrap();
        assert_eq!(two.degree().as_i64(), Some(8));
        let rep = complexity_bound_check(&cover.with_character(irreducible_characters(&g).unwrap()[1].scale_int(2)).unwrap(), 0).unwrap();
        assert!(rep.passed);

        // Z/2 inertia inside Z/4 at a degree-2 point: two geometric points above it, each split in two
        let ext = crate::local_field::build_artin_schreier(2, 1, 1, 1).unwrap();
        let d = crate::ramification::datum_from_extension(&ext).unwrap();
        let x = BoundaryPoint::new("x", 2, d, &g, vec![0, 2]).unwrap();
        assert_eq!(x.points_above(), 2);
        let cover = CoverSpec::new(0, g.clone(), vec![x], ClassFunction::trivial(g.clone())).unwrap();
        assert!(regular_consistency(&cover).unwrap().passed);
        assert_eq!(intersection_number(&cover, 2).unwrap(), intersection_number_direct(&cover, 2).unwrap());
        assert_eq!(intersection_number(&cover, 1).unwrap(), 0);
        let free = BoundaryPoint::new(
            "y",
            1,
            RamificationDatum::from_i_values(Arc::new(FiniteGroup::cyclic(1)), vec![None], 1, 2).unwrap(),
            &g,
            vec![0],
        )
        .unwrap();
        assert_eq!(sw_class(&cover, &free, 0), 0);
    }
}
