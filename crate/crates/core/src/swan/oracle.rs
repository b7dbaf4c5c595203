//! Break decompositions materialized on explicit rational matrix
//! representations through the projectors `e_H = (1/|H|) sum_(h in H) rho(h)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{break_groups, BreakProfile, Result, SwanError};
use crate::algebra::linalg::{self, QMatrix};
use crate::algebra::{int, rat, Cyclotomic, Rational};
use crate::groups::{irreducible_characters, ClassFunction, FiniteGroup, GroupError};
use crate::ramification::RamificationDatum;

/// `g -> P rho_0(g) P^-1` with `rho_0` a signed permutation representation.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    group: Arc<FiniteGroup>,
    base: Vec<QMatrix>,
    conj: QMatrix,
    conj_inv: QMatrix,
}

impl MatrixRep {
    /// The permutation representation on the left cosets of `h`.
    pub fn coset_permutation(group: &Arc<FiniteGroup>, h: &[usize]) -> std::result::Result<Self, GroupError> {
        let h = group.check_subgroup(h)?;
        let cosets = group.left_cosets(&h);
        let which: BTreeMap<usize, usize> = cosets.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |&x| (x, k))).collect();
        let n = cosets.len();
        let base = group
            .elements()
            .map(|g| {
                let mut m = vec![vec![Rational::zero(); n]; n];
                for (k, c) in cosets.iter().enumerate() {
                    m[which[&group.mul(g, c[0])]][k] = Rational::one();
                }
                m
            })
            .collect();
        Ok(MatrixRep { group: group.clone(), base, conj: linalg::identity(n), conj_inv: linalg::identity(n) })
    }

    /// Twist by a linear character with values `+-1`.
    pub fn twisted(&self, lambda: &ClassFunction) -> Option<Self> {
        let signs: Vec<i64> = self.group.elements().map(|g| lambda.value(g).as_i64()).collect::<Option<_>>()?;
        if signs.iter().any(|s| s.abs() != 1) {
            return None;
        }
        let base = self.base.iter().zip(&signs).map(|(m, &s)| linalg::mat_scale(m, &int(s))).collect();
        Some(MatrixRep { base, ..self.clone() })
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let block = |x: &QMatrix, y: &QMatrix| -> QMatrix {
            let mut m = vec![vec![Rational::zero(); a + b]; a + b];
            for i in 0..a {
                m[i][..a].clone_from_slice(&x[i]);
            }
            for i in 0..b {
                m[a + i][a..].clone_from_slice(&y[i]);
            }
            m
        };
        MatrixRep {
            group: self.group.clone(),
            base: self.group.elements().map(|g| block(&self.matrix(g), &other.matrix(g))).collect(),
            conj: linalg::identity(a + b),
            conj_inv: linalg::identity(a + b),
        }
    }

    /// Conjugate by an invertible matrix; `None` if `p` is singular.
    pub fn conjugated(&self, p: QMatrix) -> Option<Self> {
        let inv = linalg::inverse(&p)?;
        let conj = linalg::mat_mul(&p, &self.conj);
        let conj_inv = linalg::mat_mul(&self.conj_inv, &inv);
        Some(MatrixRep { conj, conj_inv, ..self.clone() })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.conj.len()
    }

    pub fn matrix(&self, g: usize) -> QMatrix {
        linalg::mat_mul(&linalg::mat_mul(&self.conj, &self.base[g]), &self.conj_inv)
    }

    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        g.elements().all(|a| g.elements().all(|b| linalg::mat_mul(&self.base[a], &self.base[b]) == self.base[g.mul(a, b)]))
    }

    /// Traces of the conjugated matrices at one element per class.
    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.group.clone(), |g| Cyclotomic::from_rational(&linalg::trace(&self.matrix(g))))
    }

    /// `e_H = (1/|H|) sum_(h in H) rho(h)`, the projector onto `V^H`.
    pub fn projector(&self, h: &[usize]) -> QMatrix {
        let n = self.dim();
        let mut acc = vec![vec![Rational::zero(); n]; n];
        for &x in h {
            acc = linalg::mat_add(&acc, &self.base[x]);
        }
        let avg = linalg::mat_scale(&acc, &rat(1, h.len() as i64));
        linalg::mat_mul(&linalg::mat_mul(&self.conj, &avg), &self.conj_inv)
    }
}

/// A random representation of dimension at most `max_dim`: a direct sum of
/// coset permutation representations, some twisted by rational linear
/// characters, conjugated by a random integer matrix.
pub fn random_rep<R: Rng>(rng: &mut R, group: &Arc<FiniteGroup>, max_dim: usize) -> std::result::Result<MatrixRep, GroupError> {
    let subgroups = small_subgroups(group);
    let signs: Vec<ClassFunction> =
        irreducible_characters(group)?.into_iter().filter(|c| c.integer_values().is_some_and(|v| v.iter().all(|x| x.abs() == 1))).collect();
    let mut rep: Option<MatrixRep> = None;
    let pieces = rng.gen_range(1..=3);
    for _ in 0..pieces {
        let fitting: Vec<&Vec<usize>> =
            subgroups.iter().filter(|h| group.order() / h.len() + rep.as_ref().map_or(0, MatrixRep::dim) <= max_dim).collect();
        let Some(h) = fitting.choose(rng) else { break };
        let mut piece = MatrixRep::coset_permutation(group, h)?;
        if rng.gen_bool(0.4) {
            if let Some(lambda) = signs.choose(rng) {
                piece = piece.twisted(lambda).expect("sign character");
            }
        }
        rep = Some(match rep {
            None => piece,
            Some(r) => r.direct_sum(&piece),
        });
    }
    let rep = rep.unwrap_or_else(|| MatrixRep::coset_permutation(group, &group.whole()).expect("whole group"));
    let n = rep.dim();
    loop {
        let p: QMatrix = (0..n).map(|i| (0..n).map(|j| int(rng.gen_range(-1..=1) + i64::from(i == j) * 2)).collect()).collect();
        if let Some(r) = rep.conjugated(p) {
            return Ok(r);
        }
    }
}

/// Subgroups generated by one or two elements.
fn small_subgroups(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in group.elements() {
        for b in group.elements().step_by(group.order().div_ceil(8)) {
            let h = group.generated_subgroup(&[a, b]);
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out.sort();
    out
}

/// The break decomposition of `rep` read off from ranks of the idempotents
/// `e_(G^(0+))` and `e_(G^(x+)) (1 - e_(G^x))`; also checks that these are
/// orthogonal idempotents summing to the identity.
pub fn idempotent_break_profile(d: &RamificationDatum, rep: &MatrixRep) -> Result<BreakProfile> {
    if !rep.group().same_group(d.group()) {
        return Err(GroupError::GroupMismatch.into());
    }
    let n = rep.dim();
    let id = linalg::identity(n);
    let mut idempotents = Vec::new();
    for (x, at, after) in break_groups(d) {
        let upper = rep.projector(&after);
        let e = if x.is_zero() {
            upper
        } else {
            let lower = rep.projector(&at);
            let complement = linalg::mat_add(&id, &linalg::mat_scale(&lower, &int(-1)));
            linalg::mat_mul(&upper, &complement)
        };
        idempotents.push((x, e));
    }
    let fail = |what: &str| SwanError::CrossCheckMismatch { quantity: format!("break idempotents: {what}"), values: vec![] };
    let mut total = vec![vec![Rational::zero(); n]; n];
    for (k, (_, e)) in idempotents.iter().enumerate() {
        if linalg::mat_mul(e, e) != *e {
            return Err(fail("not idempotent"));
        }
        for (_, f) in &idempotents[k + 1..] {
            if linalg::mat_mul(e, f).iter().flatten().any(|v| !v.is_zero()) {
                return Err(fail("not orthogonal"));
            }
        }
        total = linalg::mat_add(&total, e);
    }
    if total != id {
        return Err(fail("do not sum to the identity"));
    }
    let breaks = idempotents.iter().map(|(x, e)| (x.clone(), linalg::rank(e) as i64)).filter(|(_, m)| *m != 0).collect();
    Ok(BreakProfile { breaks, total_rank: n as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramification::quaternion_datum;
    use crate::swan::break_profile;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reps_are_homomorphisms() {
        let g = Arc::new(FiniteGroup::dihedral(4));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let r = random_rep(&mut rng, &g, 12).unwrap();
            assert!(r.is_homomorphism());
            let (a, b) = (r.matrix(1), r.matrix(4));
            assert_eq!(linalg::mat_mul(&a, &b), r.matrix(g.mul(1, 4)));
        }
    }

    #[test]
    fn quaternion_idempotents() {
        let d = quaternion_datum();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..4 {
            let r = random_rep(&mut rng, d.group(), 16).unwrap();
            let chi = r.character();
            assert_eq!(idempotent_break_profile(&d, &r).unwrap(), break_profile(&d, &chi).unwrap());
        }
        let regular = MatrixRep::coset_permutation(d.group(), &[0]).unwrap();
        let bp = idempotent_break_profile(&d, &regular).unwrap();
        assert_eq!(bp.breaks.into_iter().collect::<Vec<_>>(), vec![(int(0), 1), (int(1), 3), (rat(3, 2), 4)]);
    }
}
