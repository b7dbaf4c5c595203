//! Ramification data of finite Galois extensions: lower and upper numbering,
//! Herbrand functions, jumps, and behaviour under subgroups and quotients.

mod piecewise;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

pub use piecewise::{ceil, PiecewiseLinear};

use crate::algebra::finite_field::is_prime;
use crate::algebra::{int, Rational};
use crate::groups::{FiniteGroup, GroupError, Homomorphism, Subgroup};
use crate::local_field::{LocalFieldError, MonogenicExtension};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RamificationError {
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("quotient ramification value {0} is not an integer")]
    NonIntegralQuotient(String),
    #[error("abelian datum with non-integral jumps {0:?}")]
    HasseArfViolation(Vec<String>),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    LocalField(#[from] LocalFieldError),
}

impl RamificationError {
    pub fn code(&self) -> &'static str {
        match self {
            RamificationError::InvalidFiltration(_) => "ramification.invalid_filtration",
            RamificationError::NonIntegralQuotient(_) => "ramification.non_integral_quotient",
            RamificationError::HasseArfViolation(_) => "ramification.hasse_arf_violation",
            RamificationError::Group(e) => e.code(),
            RamificationError::LocalField(e) => e.code(),
        }
    }
}

type Result<T> = std::result::Result<T, RamificationError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(RamificationError::InvalidFiltration(msg.into()))
}

/// A finite group with its function `i_G`, residue degree `f` and residue
/// characteristic `p`. `i_G(sigma) = 0` marks elements outside inertia.
#[derive(Debug, Clone)]
pub struct RamificationDatum {
    group: Arc<FiniteGroup>,
    i_g: Vec<Option<i64>>,
    f: usize,
    p: u32,
}

impl RamificationDatum {
    /// From `i_G` per element (`None` exactly at the identity), validated.
    pub fn from_i_values(group: Arc<FiniteGroup>, i_g: Vec<Option<i64>>, f: usize, p: u32) -> Result<Self> {
        let d = Self::from_i_values_unchecked(group, i_g, f, p)?;
        d.validate()?;
        Ok(d)
    }

    /// Only the shape of the input is checked; structural invariants are not.
    pub fn from_i_values_unchecked(group: Arc<FiniteGroup>, i_g: Vec<Option<i64>>, f: usize, p: u32) -> Result<Self> {
        if i_g.len() != group.order() {
            return invalid(format!("{} i_G values for a group of order {}", i_g.len(), group.order()));
        }
        if i_g[0].is_some() || i_g.iter().skip(1).any(|v| v.is_none_or(|x| x < 0)) {
            return invalid("i_G must be infinite exactly at the identity and non-negative elsewhere");
        }
        if f == 0 {
            return invalid("residue degree must be positive");
        }
        Ok(RamificationDatum { group, i_g, f, p })
    }

    /// From the chain `G_0, G_1, ...` (each a list of elements); `G_-1 = G` is implicit
    /// and `G_i` is trivial past the end of the chain.
    pub fn from_filtration(group: Arc<FiniteGroup>, chain: &[Vec<usize>], f: usize, p: u32) -> Result<Self> {
        Self::from_filtration_inner(group, chain, f, p, true)
    }

    pub fn from_filtration_unchecked(group: Arc<FiniteGroup>, chain: &[Vec<usize>], f: usize, p: u32) -> Result<Self> {
        Self::from_filtration_inner(group, chain, f, p, false)
    }

    fn from_filtration_inner(group: Arc<FiniteGroup>, chain: &[Vec<usize>], f: usize, p: u32, check: bool) -> Result<Self> {
        let sets: Vec<BTreeSet<usize>> = chain.iter().map(|c| c.iter().copied().collect()).collect();
        for (i, s) in sets.iter().enumerate() {
            if s.iter().any(|&x| x >= group.order()) {
                return invalid(format!("G_{i} names an element outside the group"));
            }
            if !s.contains(&0) {
                return invalid(format!("G_{i} does not contain the identity"));
            }
            if i > 0 && !s.is_subset(&sets[i - 1]) {
                return invalid(format!("G_{i} is not contained in G_{}", i - 1));
            }
        }
        let i_g =
            group.elements().map(|x| if x == 0 { None } else { Some(sets.iter().take_while(|s| s.contains(&x)).count() as i64) }).collect();
        if check {
            Self::from_i_values(group, i_g, f, p)
        } else {
            Self::from_i_values_unchecked(group, i_g, f, p)
        }
    }

    /// Checks every structural invariant, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if !is_prime(self.p as u64) {
            return invalid(format!("residue characteristic {} is not prime", self.p));
        }
        for x in g.elements() {
            for y in g.elements() {
                if self.i_g[g.conjugate(x, y)] != self.i_g[x] {
                    return invalid(format!("i_G is not constant on the class of {}", g.label(x)));
                }
            }
        }
        let top = self.max_index();
        for i in 0..=top {
            let gi = self.lower_group_int(i);
            if !g.is_subgroup(&gi) {
                return invalid(format!("G_{i} is not a subgroup"));
            }
            if !g.is_normal(&gi) {
                return invalid(format!("G_{i} is not normal"));
            }
        }
        let g0 = self.lower_group_int(0);
        let g1 = self.lower_group_int(1);
        if g.order() / g0.len() != self.f {
            return invalid(format!("residue degree {} differs from [G:G_0] = {}", self.f, g.order() / g0.len()));
        }
        let (quotient, _) = g.quotient(&g0)?;
        if !quotient.is_cyclic_subgroup(&quotient.whole()) {
            return invalid("G/G_0 is not cyclic");
        }
        let (g0_group, incl) = g.subgroup_as_group(&g0)?;
        let g1_in_g0: Vec<usize> = g1.iter().map(|x| incl.binary_search(x).unwrap()).collect();
        let (tame, _) = g0_group.quotient(&g1_in_g0)?;
        if !tame.is_cyclic_subgroup(&tame.whole()) {
            return invalid("G_0/G_1 is not cyclic");
        }
        if tame.order() % self.p as usize == 0 {
            return invalid(format!("|G_0/G_1| = {} is divisible by p = {}", tame.order(), self.p));
        }
        if !g.is_p_group(&g1, self.p as usize) {
            return invalid(format!("G_1 (order {}) is not a {}-group", g1.len(), self.p));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn residue_degree(&self) -> usize {
        self.f
    }

    pub fn residue_characteristic(&self) -> u32 {
        self.p
    }

    /// `i_G(sigma)`, `None` for the identity.
    pub fn i_g(&self, sigma: usize) -> Option<i64> {
        self.i_g[sigma]
    }

    pub fn i_values(&self) -> &[Option<i64>] {
        &self.i_g
    }

    /// Largest finite `i_G`, or 0 for the trivial group.
    pub fn max_index(&self) -> i64 {
        self.i_g.iter().flatten().copied().max().unwrap_or(0)
    }

    fn lower_group_int(&self, i: i64) -> Subgroup {
        if i <= -1 {
            return self.group.whole();
        }
        self.group.elements().filter(|&x| self.i_g[x].is_none_or(|v| v > i)).collect()
    }

    /// `G_u = G_ceil(u)` for real `u >= -1`.
    pub fn lower_group(&self, u: &Rational) -> Subgroup {
        self.lower_group_int(ceil(u))
    }

    /// `|G_i| / |G_0|`.
    pub fn relative_size(&self, i: i64) -> Rational {
        Rational::new(self.lower_group_int(i).len().into(), self.inertia().len().into())
    }

    pub fn inertia(&self) -> Subgroup {
        self.lower_group_int(0)
    }

    pub fn wild_inertia(&self) -> Subgroup {
        self.lower_group_int(1)
    }

    /// `(i, G_i)` for `i = -1, 0, ..., max i_G`; the last entry is trivial.
    pub fn lower_filtration(&self) -> Vec<(i64, Subgroup)> {
        let top = if self.group.order() == 1 { -1 } else { self.max_index() };
        (-1..=top).map(|i| (i, self.lower_group_int(i))).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// `phi(u) = int_0^u dt / (G_0 : G_t)`, slope 1 on `[-1, 0]`.
    pub fn phi(&self) -> PiecewiseLinear {
        let g0 = self.lower_group_int(0).len() as i64;
        let top = self.max_index().max(0);
        let mut xs = vec![int(-1), int(0)];
        let mut ys = vec![int(-1), int(0)];
        for i in 0..top {
            let slope = Rational::new(self.lower_group_int(i + 1).len().into(), g0.into());
            xs.push(int(i + 1));
            ys.push(ys.last().unwrap() + slope);
        }
        let final_slope = Rational::new(self.lower_group_int(top + 1).len().into(), g0.into());
        PiecewiseLinear::from_points(xs, ys, final_slope)
    }

    pub fn psi(&self) -> PiecewiseLinear {
        self.phi().inverse()
    }

    /// `G^v = G_psi(v)`.
    pub fn upper_group(&self, v: &Rational) -> Subgroup {
        let psi = self.psi();
        match psi.eval(v) {
            Some(u) => self.lower_group(&u),
            None => self.group.whole(),
        }
    }

    /// Lower indices `i >= -1` with `G_i != G_(i+1)`.
    pub fn lower_jumps(&self) -> Vec<i64> {
        (-1..=self.max_index()).filter(|&i| self.lower_group_int(i).len() != self.lower_group_int(i + 1).len()).collect()
    }

    /// Upper jumps `phi(i)` for the lower jumps `i`, ascending.
    pub fn jumps(&self) -> Vec<Rational> {
        let phi = self.phi();
        self.lower_jumps().iter().map(|&i| phi.eval(&int(i)).unwrap()).collect()
    }

    pub fn positive_jumps(&self) -> Vec<Rational> {
        self.jumps().into_iter().filter(|j| *j > Rational::zero()).collect()
    }

    /// `f(G/H)` for a normal `H`: the index of the image of `G_0`.
    fn quotient_residue_degree(&self, h: &[usize]) -> usize {
        let g0 = self.inertia();
        let mut image: BTreeSet<usize> = BTreeSet::new();
        for &x in &g0 {
            for &y in h {
                image.insert(self.group.mul(x, y));
            }
        }
        self.group.order() / image.len()
    }

    /// The datum of `L / L^H` for a subgroup `H`: `i_H` is the restriction of `i_G`.
    pub fn subgroup_datum(&self, h: &[usize]) -> Result<RamificationDatum> {
        let (sub, incl) = self.group.subgroup_as_group(h)?;
        let i_h: Vec<Option<i64>> = incl.iter().map(|&x| self.i_g[x]).collect();
        let h0 = incl.iter().filter(|&&x| self.i_g[x].is_none_or(|v| v >= 1)).count();
        RamificationDatum::from_i_values(Arc::new(sub), i_h, incl.len() / h0, self.p)
    }

    /// The datum of `L^H / K` for a normal `H`:
    /// `i_(G/H)(s) = (1/|H cap G_0|) sum_(sigma -> s) i_G(sigma)`.
    pub fn quotient_datum(&self, h: &[usize]) -> Result<RamificationDatum> {
        let (quot, proj) = self.group.quotient(h)?;
        let e_prime = h.iter().filter(|&&x| self.i_g[x].is_none_or(|v| v >= 1)).count() as i64;
        let mut sums = vec![0i64; quot.order()];
        for x in self.group.elements() {
            if proj[x] != 0 {
                sums[proj[x]] += self.i_g[x].unwrap();
            }
        }
        let mut i_q = vec![None; quot.order()];
        for s in 1..quot.order() {
            if sums[s] % e_prime != 0 {
                return Err(RamificationError::NonIntegralQuotient(format!("{}/{}", sums[s], e_prime)));
            }
            i_q[s] = Some(sums[s] / e_prime);
        }
        let f = self.quotient_residue_degree(h);
        RamificationDatum::from_i_values(Arc::new(quot), i_q, f, self.p)
    }

    /// Whether `psi` maps every integer in `[-1, bound]` to an integer.
    pub fn psi_maps_integers(&self, bound: i64) -> bool {
        let psi = self.psi();
        (-1..=bound).all(|n| psi.eval(&int(n)).unwrap().is_integer())
    }
}

/// The datum of an extension built by the field engine.
pub fn datum_from_extension(ext: &MonogenicExtension) -> Result<RamificationDatum> {
    let i_g = ext.group().elements().map(|g| ext.i_of(g)).collect::<std::result::Result<Vec<_>, _>>()?;
    RamificationDatum::from_i_values(ext.group().clone(), i_g, ext.residue_degree(), ext.characteristic())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseArfReport {
    pub abelian: bool,
    pub jumps: Vec<Rational>,
    /// `Some(true)` when the group is abelian and every jump is integral;
    /// `None` for nonabelian groups, where nothing is asserted.
    pub passed: Option<bool>,
}

pub fn hasse_arf_check(d: &RamificationDatum) -> Result<HasseArfReport> {
    let jumps = d.jumps();
    if !d.is_abelian() {
        return Ok(HasseArfReport { abelian: false, jumps, passed: None });
    }
    let bad: Vec<String> = jumps.iter().filter(|j| !j.is_integer()).map(|j| j.to_string()).collect();
    if !bad.is_empty() {
        return Err(RamificationError::HasseArfViolation(bad));
    }
    Ok(HasseArfReport { abelian: true, jumps, passed: Some(true) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerbrandReport {
    /// `G_u H/H = (G/H)_(phi_(L/L^H)(u))`
    pub quotient_lower: bool,
    /// `G^v H/H = (G/H)^v`
    pub quotient_upper: bool,
    /// `phi_(L/K) = phi_(L^H/K) o phi_(L/L^H)`
    pub transitivity: bool,
    pub failures: Vec<String>,
}

impl HerbrandReport {
    pub fn all_pass(&self) -> bool {
        self.quotient_lower && self.quotient_upper && self.transitivity
    }
}

pub fn herbrand_checks(d: &RamificationDatum, h: &[usize]) -> Result<HerbrandReport> {
    let g = d.group();
    let h = g.check_subgroup(h)?;
    if !g.is_normal(&h) {
        return Err(GroupError::NotNormal.into());
    }
    let proj = Homomorphism::projection(g, &h)?;
    let quot = d.quotient_datum(&h)?;
    let sub = d.subgroup_datum(&h)?;
    let (phi, phi_top, phi_bottom) = (d.phi(), quot.phi(), sub.phi());
    let image = |s: &[usize]| -> Subgroup {
        let set: BTreeSet<usize> = s.iter().map(|&x| proj.apply(x)).collect();
        set.into_iter().collect()
    };

    let mut samples: Vec<Rational> =
        [&phi, &phi_top, &phi_bottom, &phi.inverse(), &phi_top.inverse()].iter().flat_map(|f| f.sample_points()).collect();
    samples.extend((-1..=d.max_index() + 1).map(int));
    samples.push(Rational::new((-1).into(), 2.into()));
    samples.sort();
    samples.dedup();

    let mut failures = Vec::new();
    let mut quotient_lower = true;
    let mut quotient_upper = true;
    for u in &samples {
        let lhs = image(&d.lower_group(u));
        let rhs = quot.lower_group(&phi_bottom.eval(u).unwrap());
        if lhs != rhs {
            quotient_lower = false;
            failures.push(format!("G_u H/H differs from (G/H)_phi(u) at u = {u}"));
        }
        let lhs = image(&d.upper_group(u));
        let rhs = quot.upper_group(u);
        if lhs != rhs {
            quotient_upper = false;
            failures.push(format!("G^v H/H differs from (G/H)^v at v = {u}"));
        }
    }
    let composed = phi_top.compose(&phi_bottom);
    let mut transitivity = composed == phi;
    for u in &samples {
        if phi.eval(u) != composed.eval(u) {
            transitivity = false;
        }
    }
    if !transitivity {
        failures.push(format!("phi_L/K = {phi} but the composite is {composed}"));
    }
    Ok(HerbrandReport { quotient_lower, quotient_upper, transitivity, failures })
}

/// The quaternion datum: `G_0 = G_1 = Q8`, `G_2 = G_3 = {1, -1}`, `G_4 = 1`, `p = 2`.
pub fn quaternion_datum() -> RamificationDatum {
    let g = Arc::new(FiniteGroup::quaternion8());
    let all: Vec<usize> = g.whole();
    let chain = vec![all.clone(), all, vec![0, 1], vec![0, 1]];
    RamificationDatum::from_filtration(g, &chain, 1, 2).expect("quaternion datum is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::local_field::{build_artin_schreier, build_tame};

    fn cyclic_datum(l: usize, t: i64) -> RamificationDatum {
        // cyclic of prime order l, G_0 = ... = G_t, G_(t+1) = 1
        let g = Arc::new(FiniteGroup::cyclic(l));
        let i_g = g.elements().map(|x| if x == 0 { None } else { Some(t + 1) }).collect();
        let p = if t == 0 { 2 } else { l as u32 };
        RamificationDatum::from_i_values(g, i_g, 1, p).unwrap()
    }

    #[test]
    fn extension_data() {
        let d = datum_from_extension(&build_artin_schreier(3, 1, 2, 1).unwrap()).unwrap();
        let sizes: Vec<usize> = d.lower_filtration().iter().map(|(_, s)| s.len()).collect();
        assert_eq!(sizes, vec![3, 3, 3, 3, 1]);
        let d = datum_from_extension(&build_tame(11, 5).unwrap()).unwrap();
        let sizes: Vec<usize> = d.lower_filtration().iter().map(|(_, s)| s.len()).collect();
        assert_eq!(sizes, vec![5, 5, 1]);
        let d = datum_from_extension(&build_tame(7, 1).unwrap()).unwrap();
        assert_eq!(d.lower_filtration(), vec![(-1, vec![0])]);
        assert!(d.i_values().iter().all(Option::is_none));
        let d = datum_from_extension(&build_artin_schreier(2, 1, 1, 1).unwrap()).unwrap();
        let sizes: Vec<usize> = d.lower_filtration().iter().map(|(_, s)| s.len()).collect();
        assert_eq!(sizes, vec![2, 2, 2, 1]);
    }

    #[test]
    fn quaternion() {
        let d = quaternion_datum();
        let sizes: Vec<usize> = d.lower_filtration().iter().map(|(_, s)| s.len()).collect();
        assert_eq!(sizes, vec![8, 8, 8, 2, 2, 1]);
        assert_eq!(d.positive_jumps(), vec![int(1), rat(3, 2)]);
        assert_eq!(d.upper_group(&rat(5, 4)), vec![0, 1]);
        assert_eq!(d.upper_group(&int(0)), d.inertia());
        assert_eq!(d.upper_group(&int(-1)), d.group().whole());
        let rep = hasse_arf_check(&d).unwrap();
        assert_eq!(rep.passed, None);
        let q = d.quotient_datum(&[0, 1]).unwrap();
        assert!(q.group().is_abelian());
        assert_eq!(q.group().order(), 4);
        let rep = herbrand_checks(&d, &[0, 1]).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures);
    }

    #[test]
    fn rejects_bad_chains() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        // G_0/G_1 = Z/3 with p = 3
        let err = RamificationDatum::from_filtration(g.clone(), &[vec![0, 1, 2]], 1, 3).unwrap_err();
        assert!(matches!(err, RamificationError::InvalidFiltration(m) if m.contains("divisible by p")));
        let s3 = Arc::new(FiniteGroup::dihedral(3));
        let all = s3.whole();
        let err = RamificationDatum::from_filtration(s3, &[all.clone(), all, vec![0, 3]], 1, 2).unwrap_err();
        assert!(matches!(err, RamificationError::InvalidFiltration(_)));
    }

    #[test]
    fn prime_cyclic_closed_forms() {
        for (l, t) in [(2usize, 1i64), (3, 2), (5, 4), (7, 0)] {
            let d = cyclic_datum(l, t);
            let (phi, psi) = (d.phi(), d.psi());
            for k in -4..40 {
                let u = rat(k, 4);
                let expected = if u <= int(t) { u.clone() } else { int(t) + (&u - int(t)) / int(l as i64) };
                assert_eq!(phi.eval(&u).unwrap(), expected);
                let expected = if u <= int(t) { u.clone() } else { int(l as i64) * (&u - int(t)) + int(t) };
                assert_eq!(psi.eval(&u).unwrap(), expected);
            }
        }
    }

    #[test]
    fn subgroup_and_quotient_of_tame() {
        let d = datum_from_extension(&build_tame(7, 6).unwrap()).unwrap();
        let h = d.subgroup_datum(&[0, 2, 4]).unwrap();
        assert!(h.i_values().iter().skip(1).all(|&v| v == Some(1)));
        assert_eq!(d.subgroup_datum(&d.group().whole()).unwrap().i_values(), d.i_values());
        assert_eq!(d.subgroup_datum(&[0]).unwrap().group().order(), 1);
        assert!(herbrand_checks(&d, &[0, 3]).unwrap().all_pass());
        assert!(herbrand_checks(&d, &[0]).unwrap().all_pass());
        assert_eq!(d.quotient_datum(&[0]).unwrap().i_values(), d.i_values());
        assert_eq!(d.quotient_datum(&d.group().whole()).unwrap().group().order(), 1);
        let rep = hasse_arf_check(&d).unwrap();
        assert_eq!(rep.jumps, vec![int(0)]);
    }

    #[test]
    fn residue_degree_data() {
        // G = Z/6, G_0 = {0, 2, 4} tame of order 3, f = 2, p = 5
        let g = Arc::new(FiniteGroup::cyclic(6));
        let i_g = vec![None, Some(0), Some(1), Some(0), Some(1), Some(0)];
        let d = RamificationDatum::from_i_values(g.clone(), i_g.clone(), 2, 5).unwrap();
        assert_eq!(d.jumps(), vec![int(-1), int(0)]);
        assert!(herbrand_checks(&d, &[0, 3]).unwrap().all_pass());
        assert!(herbrand_checks(&d, &[0, 2, 4]).unwrap().all_pass());
        assert!(RamificationDatum::from_i_values(g, i_g, 1, 5).is_err());
    }
}
