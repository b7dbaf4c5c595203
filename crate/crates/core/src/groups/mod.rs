//! Finite groups by multiplication table and their exact character theory.

mod characters;
mod class_function;
mod group;

pub use characters::{irreducible_characters, irreducible_characters_bounded, DEFAULT_ORDER_BOUND};
pub use class_function::{combination, decompose, standard_characters, ClassFunction, Decomposition};
pub use group::{FiniteGroup, Homomorphism, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("the given elements do not form a subgroup")]
    NotASubgroup,
    #[error("the subgroup is not normal")]
    NotNormal,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a class function: {0}")]
    NotClassFunction(String),
    #[error("group order {order} exceeds the character-table bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("fixed-space dimension {0} is not a non-negative integer")]
    NonIntegerDimension(String),
    #[error("character table computation failed: {0}")]
    CharacterTableFailure(String),
}

impl GroupError {
    pub fn code(&self) -> &'static str {
        match self {
            GroupError::InvalidTable(_) => "groups.invalid_table",
            GroupError::NotASubgroup => "groups.not_a_subgroup",
            GroupError::NotNormal => "groups.not_normal",
            GroupError::GroupMismatch => "groups.group_mismatch",
            GroupError::NotAHomomorphism(_) => "groups.not_a_homomorphism",
            GroupError::NotClassFunction(_) => "groups.not_class_function",
            GroupError::OrderBoundExceeded { .. } => "groups.order_bound_exceeded",
            GroupError::NonIntegerDimension(_) => "groups.non_integer_dimension",
            GroupError::CharacterTableFailure(_) => "groups.character_table_failure",
        }
    }
}

/// Built-in groups of order at most `max_order`, used by tests and the verifier.
pub fn builtin_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(FiniteGroup::cyclic(n));
    }
    for n in 2..=max_order / 2 {
        out.push(FiniteGroup::dihedral(n));
    }
    for (p, r) in [(2usize, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
        if p.pow(r) <= max_order {
            out.push(FiniteGroup::elementary_abelian(p, r));
        }
    }
    if max_order >= 8 {
        out.push(FiniteGroup::quaternion8());
    }
    let q8 = FiniteGroup::quaternion8();
    for m in [2, 3, 4, 6, 8] {
        if 8 * m <= max_order {
            out.push(FiniteGroup::direct_product(&q8, &FiniteGroup::cyclic(m)));
        }
    }
    for (a, b) in [(3, 2), (3, 3), (4, 2), (5, 2), (4, 4)] {
        if 4 * a * b <= max_order {
            out.push(FiniteGroup::direct_product(&FiniteGroup::dihedral(a), &FiniteGroup::dihedral(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::Cyclotomic;

    fn cyc(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(n)
    }

    #[test]
    fn standard_character_values() {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let (one, r, u) = standard_characters(&g);
        assert_eq!(r.degree(), &cyc(8));
        assert!(g.elements().skip(1).all(|x| u.value(x) == &cyc(-1)));
        assert!(g.elements().all(|x| one.value(x) == &cyc(1)));
        assert_eq!(one.inner_product(&one).unwrap(), cyc(1));
        for chi in irreducible_characters(&g).unwrap() {
            assert_eq!(r.inner_product(&chi).unwrap(), chi.degree().clone());
        }
    }

    #[test]
    fn quaternion_table() {
        let g = Arc::new(FiniteGroup::quaternion8());
        let irr = irreducible_characters(&g).unwrap();
        assert_eq!(irr.len(), 5);
        let degrees: Vec<i64> = irr.iter().map(|c| c.degree().as_i64().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        let two = irr.last().unwrap();
        assert_eq!(two.integer_values().unwrap(), vec![2, -2, 0, 0, 0]);
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                assert_eq!(a.inner_product(b).unwrap(), cyc((i == j) as i64));
            }
        }
        // degree-2 character has no Z(G)-invariants
        assert_eq!(two.fixed_space_dim(&[0, 1]).unwrap(), 0);
    }

    #[test]
    fn cyclic_three() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let irr = irreducible_characters(&g).unwrap();
        assert_eq!(irr.len(), 3);
        for chi in &irr {
            let z = chi.value(1).clone();
            assert!([0, 1, 2].iter().any(|&j| z == Cyclotomic::root_of_unity(3, j)));
            assert_eq!(chi.value(2), &(&z * &z));
        }
        assert_eq!(irr[0], ClassFunction::trivial(g));
    }

    #[test]
    fn induction_examples() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let inc = Homomorphism::inclusion(&c4, &[0, 2]).unwrap();
        let sign = ClassFunction::new(inc.source.clone(), vec![cyc(1), cyc(-1)]).unwrap();
        let ind = sign.induce(&inc).unwrap();
        // brute force: (1/|H|) sum_{x: x g x^-1 in H} phi(...)
        assert_eq!(ind.value(1), &cyc(0));
        assert_eq!(ind.value(2), &cyc(-2));
        assert_eq!(ind.value(0), &cyc(2));

        let triv = Arc::new(FiniteGroup::cyclic(1));
        let into = Homomorphism::new(triv.clone(), c4.clone(), vec![0]).unwrap();
        assert_eq!(ClassFunction::trivial(triv).induce(&into).unwrap(), ClassFunction::regular(c4.clone()));

        let proj = Homomorphism::projection(&c4, &[0, 2]).unwrap();
        let pushed = ClassFunction::trivial(c4).induce(&proj).unwrap();
        assert_eq!(pushed, ClassFunction::trivial(proj.target.clone()));
    }

    #[test]
    fn restriction_examples() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let inc = Homomorphism::inclusion(&g, &[0, 1, 2]).unwrap();
        let r = ClassFunction::regular(g.clone()).restrict(&inc).unwrap();
        assert_eq!(r, ClassFunction::regular(inc.source.clone()).scale_int(2));
        let id = Homomorphism::identity(g.clone());
        let chi = irreducible_characters(&g).unwrap().pop().unwrap();
        assert_eq!(chi.restrict(&id).unwrap(), chi);
        assert_eq!(chi.induce(&id).unwrap(), chi);
    }

    #[test]
    fn decompositions() {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let irr = irreducible_characters(&g).unwrap();
        let d = decompose(&ClassFunction::regular(g.clone())).unwrap();
        assert!(d.is_character);
        let degrees: Vec<i64> = irr.iter().map(|c| c.degree().as_i64().unwrap()).collect();
        assert_eq!(d.integer_multiplicities().unwrap(), degrees);
        let bad = ClassFunction::trivial(g.clone()).scale_int(2).sub(&irr[1]).unwrap();
        assert!(!decompose(&bad).unwrap().is_character);
        let u = decompose(&ClassFunction::augmentation(g)).unwrap().integer_multiplicities().unwrap();
        assert_eq!(u[0], 0);
    }

    #[test]
    fn fixed_space_errors() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f = ClassFunction::new(g, vec![cyc(1), cyc(0)]).unwrap();
        assert!(matches!(f.fixed_space_dim(&[0, 1]), Err(GroupError::NonIntegerDimension(_))));
    }

    #[test]
    fn order_bound() {
        let g = Arc::new(FiniteGroup::cyclic(300));
        assert!(matches!(irreducible_characters(&g), Err(GroupError::OrderBoundExceeded { .. })));
    }

    #[test]
    fn degree_sums_on_builtins() {
        for g in builtin_groups(24) {
            let g = Arc::new(g);
            let irr = irreducible_characters(&g).unwrap();
            assert_eq!(irr.len(), g.class_count());
            let s: i64 = irr.iter().map(|c| c.degree().as_i64().unwrap().pow(2)).sum();
            assert_eq!(s as usize, g.order(), "{g:?}");
        }
    }

    #[test]
    fn duals() {
        let g = Arc::new(FiniteGroup::direct_product(&FiniteGroup::quaternion8(), &FiniteGroup::cyclic(3)));
        let irr = irreducible_characters(&g).unwrap();
        let one = ClassFunction::trivial(g.clone());
        for a in &irr {
            for b in &irr {
                let lhs = a.mul(b).unwrap().inner_product(&one).unwrap();
                assert_eq!(lhs, a.inner_product(&b.dual()).unwrap());
            }
        }
    }
}
