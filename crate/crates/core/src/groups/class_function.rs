use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::group::{FiniteGroup, Homomorphism};
use super::GroupError;
use crate::algebra::Cyclotomic;

/// A cyclotomic-valued function on the conjugacy classes of a group.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// Values listed per conjugacy class, in the group's class order.
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        if values.len() != group.class_count() {
            return Err(GroupError::NotClassFunction(format!("{} values given for {} classes", values.len(), group.class_count())));
        }
        Ok(ClassFunction { group, values })
    }

    /// From a value per element; rejects functions that are not constant on classes.
    pub fn from_element_values(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        if values.len() != group.order() {
            return Err(GroupError::NotClassFunction("one value per element required".into()));
        }
        for cls in group.classes() {
            if cls.iter().any(|&g| values[g] != values[cls[0]]) {
                return Err(GroupError::NotClassFunction(format!("not constant on the class of {}", cls[0])));
            }
        }
        let values = group.classes().iter().map(|c| values[c[0]].clone()).collect();
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` at one representative per class.
    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = group.classes().iter().map(|c| f(c[0])).collect();
        ClassFunction { group, values }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, |_| Cyclotomic::zero())
    }

    /// `1_G`
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, |_| Cyclotomic::one())
    }

    /// `r_G`: `|G|` at the identity, 0 elsewhere.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order() as i64;
        Self::from_fn(group, |g| Cyclotomic::from_int(if g == 0 { n } else { 0 }))
    }

    /// `u_G = r_G - 1_G`
    pub fn augmentation(group: Arc<FiniteGroup>) -> Self {
        Self::regular(group.clone()).sub(&Self::trivial(group)).unwrap()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn class_values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        self.value(0)
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.group.same_group(&other.group) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self, GroupError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale_int(k)).collect() }
    }

    /// `g -> chi(g^-1)`
    pub fn dual(&self) -> Self {
        let g = &self.group;
        Self::from_fn(g.clone(), |x| self.value(g.inv(x)).clone())
    }

    /// `(1/|G|) sum_g phi(g) psi(g^-1)`
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic, GroupError> {
        self.check(other)?;
        let g = &self.group;
        let mut total = Cyclotomic::zero();
        for cls in g.classes() {
            let x = cls[0];
            let term = self.value(x) * other.value(g.inv(x));
            total = &total + &term.scale_int(cls.len() as i64);
        }
        Ok(total.scale(&BigRational::new(1.into(), BigInt::from(g.order()))))
    }

    /// Pushforward along `alpha: H -> G`.
    pub fn induce(&self, alpha: &Homomorphism) -> Result<ClassFunction, GroupError> {
        if !self.group.same_group(&alpha.source) {
            return Err(GroupError::GroupMismatch);
        }
        let target = &alpha.target;
        let mut sums = vec![Cyclotomic::zero(); target.class_count()];
        for h in self.group.elements() {
            let c = target.class_of(alpha.apply(h));
            sums[c] = &sums[c] + self.value(h);
        }
        let h_order = BigInt::from(self.group.order());
        let values = target
            .classes()
            .iter()
            .zip(sums)
            .map(|(cls, s)| s.scale(&BigRational::new(BigInt::from(target.centralizer_order(cls[0])), h_order.clone())))
            .collect();
        Ok(ClassFunction { group: target.clone(), values })
    }

    /// Pullback `phi o alpha` along `alpha: H -> G`.
    pub fn restrict(&self, alpha: &Homomorphism) -> Result<ClassFunction, GroupError> {
        if !self.group.same_group(&alpha.target) {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Self::from_fn(alpha.source.clone(), |h| self.value(alpha.apply(h)).clone()))
    }

    /// `dim V^H = (1/|H|) sum_{h in H} chi(h)` for a subgroup `H` given by its elements.
    pub fn fixed_space_dim(&self, h: &[usize]) -> Result<i64, GroupError> {
        let total: Cyclotomic = h.iter().map(|&x| self.value(x).clone()).sum();
        let avg = total.scale(&BigRational::new(1.into(), BigInt::from(h.len())));
        match avg.as_integer() {
            Some(n) if !n.is_negative() => Ok(n.to_i64().expect("dimension fits in i64")),
            _ => Err(GroupError::NonIntegerDimension(avg.to_string())),
        }
    }

    /// The value at every class as a rational integer, if all are.
    pub fn integer_values(&self) -> Option<Vec<i64>> {
        self.values.iter().map(Cyclotomic::as_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group) && self.values == other.values
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

/// Multiplicities of the irreducible characters in a class function.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub multiplicities: Vec<Cyclotomic>,
    pub is_character: bool,
}

impl Decomposition {
    pub fn integer_multiplicities(&self) -> Option<Vec<i64>> {
        self.multiplicities.iter().map(Cyclotomic::as_i64).collect()
    }
}

pub fn decompose(phi: &ClassFunction) -> Result<Decomposition, GroupError> {
    let irr = super::irreducible_characters(phi.group())?;
    let multiplicities: Vec<Cyclotomic> = irr.iter().map(|chi| phi.inner_product(chi)).collect::<Result<_, _>>()?;
    let is_character = multiplicities.iter().all(|m| m.as_integer().is_some_and(|n| !n.is_negative()));
    Ok(Decomposition { multiplicities, is_character })
}

/// Standard characters `(1_G, r_G, u_G)`.
pub fn standard_characters(group: &Arc<FiniteGroup>) -> (ClassFunction, ClassFunction, ClassFunction) {
    (ClassFunction::trivial(group.clone()), ClassFunction::regular(group.clone()), ClassFunction::augmentation(group.clone()))
}

/// `sum_i m_i chi_i` for integer multiplicities against the irreducible table.
pub fn combination(group: &Arc<FiniteGroup>, mults: &[i64]) -> Result<ClassFunction, GroupError> {
    let irr = super::irreducible_characters(group)?;
    let mut acc = ClassFunction::zero(group.clone());
    for (chi, &m) in irr.iter().zip(mults) {
        if m != 0 {
            acc = acc.add(&chi.scale_int(m))?;
        }
    }
    Ok(acc)
}
