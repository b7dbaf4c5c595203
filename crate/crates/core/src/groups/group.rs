use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::GroupError;
use crate::algebra::Cyclotomic;

/// A subgroup, as the sorted list of its element indices. Always contains 0.
pub type Subgroup = Vec<usize>;

/// A finite group given by its multiplication table. Element 0 is the identity.
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    exponent: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    labels: Option<Vec<String>>,
    tag: Option<String>,
    pub(super) char_table: OnceLock<Result<Vec<Vec<Cyclotomic>>, GroupError>>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::build(table, None, None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self
    }

    fn build(table: Vec<Vec<usize>>, labels: Option<Vec<String>>, tag: Option<String>) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |m: &str| Err(GroupError::InvalidTable(m.to_string()));
        if n == 0 {
            return bad("empty table");
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries in 0..n");
        }
        for (a, row) in table.iter().enumerate() {
            if row[0] != a || table[0][a] != a {
                return bad("element 0 must be the identity");
            }
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return bad("rows must be permutations (cancellation fails)");
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverses: Vec<usize> = (0..n).map(|a| table[a].iter().position(|&x| x == 0).unwrap()).collect();
        let orders: Vec<usize> = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1);
                while x != 0 {
                    x = table[x][a];
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = orders.iter().fold(1, |acc, &o| acc.lcm(&o));
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|x| table[table[x][g]][inverses[x]]).collect();
            for &h in &cls {
                class_of[h] = classes.len();
            }
            classes.push(cls.into_iter().collect());
        }
        Ok(FiniteGroup { table, inverses, orders, exponent, classes, class_of, labels, tag, char_table: OnceLock::new() })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::build(table, None, Some(format!("cyclic({n})"))).unwrap()
    }

    /// `(Z/p)^r`, with element `sum d_i p^i` the digit vector `(d_0, ..., d_{r-1})`.
    pub fn elementary_abelian(p: usize, r: u32) -> Self {
        let n = p.pow(r);
        let add = |mut a: usize, mut b: usize| {
            let (mut out, mut place) = (0, 1);
            for _ in 0..r {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let table = (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect();
        Self::build(table, None, Some(format!("elementary_abelian({p}^{r})"))).unwrap()
    }

    /// `G x H` with `(g, h)` stored at index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m).map(|a| (0..n * m).map(|b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m)).collect()).collect();
        let tag = format!("direct_product({}, {})", g.tag().unwrap_or("table"), h.tag().unwrap_or("table"));
        Self::build(table, None, Some(tag)).unwrap()
    }

    /// The quaternion group, elements ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion8() -> Self {
        // unit products: (sign, unit) for units 0=1, 1=i, 2=j, 3=k
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = UNIT[a / 2][b / 2];
                        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                        2 * u + sign as usize
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        Self::build(table, Some(labels), Some("quaternion8".into())).unwrap()
    }

    /// The dihedral group of order `2n`; `r^a s^b` is stored at index `a + n b`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (a, b, c, d) = (x % n, x / n, y % n, y / n);
                        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                        rot + n * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::build(table, None, Some(format!("dihedral({n})"))).unwrap()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let k = k.rem_euclid(o);
        (0..k).fold(0, |acc, _| self.table[acc][a])
    }

    /// `x g x^-1`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.table[self.table[x][g]][self.inverses[x]]
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn centralizer_order(&self, g: usize) -> usize {
        self.order() / self.classes[self.class_of[g]].len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        vec![0]
    }

    pub fn whole(&self) -> Subgroup {
        self.elements().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn check_subgroup(&self, h: &[usize]) -> Result<Subgroup, GroupError> {
        if h.iter().any(|&x| x >= self.order()) || !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        let set: BTreeSet<usize> = h.iter().copied().collect();
        Ok(set.into_iter().collect())
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        self.is_subgroup(h) && h.iter().all(|&n| self.elements().all(|x| set.contains(&self.conjugate(n, x))))
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_cyclic_subgroup(&self, h: &[usize]) -> bool {
        h.iter().any(|&g| self.orders[g] == h.len())
    }

    /// Left cosets `xH`, each sorted, listed by smallest element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&k| self.mul(x, k)).collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out
    }

    /// The subgroup `h` as a group in its own right, with the inclusion map.
    pub fn subgroup_as_group(&self, h: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let h = self.check_subgroup(h)?;
        let index = |x: usize| h.binary_search(&x).unwrap();
        let table = h.iter().map(|&a| h.iter().map(|&b| index(self.mul(a, b))).collect()).collect();
        let labels = self.labels.as_ref().map(|l| h.iter().map(|&x| l[x].clone()).collect());
        let g = Self::build(table, labels, None)?;
        Ok((g, h))
    }

    /// `G/N` with cosets ordered by smallest element, and the projection map.
    pub fn quotient(&self, n: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let cosets = self.left_cosets(n);
        let mut proj = vec![0; self.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = i;
            }
        }
        let table = cosets.iter().map(|a| cosets.iter().map(|b| proj[self.mul(a[0], b[0])]).collect()).collect();
        Ok((Self::build(table, None, None)?, proj))
    }

    /// Intersection of two subgroups.
    pub fn intersect(a: &[usize], b: &[usize]) -> Subgroup {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    pub fn is_p_group(&self, h: &[usize], p: usize) -> bool {
        let mut n = h.len();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other) || self.table == other.table
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order()).field("tag", &self.tag).field("classes", &self.classes.len()).finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

impl Eq for FiniteGroup {}

/// A group homomorphism given elementwise.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::NotAHomomorphism("map has the wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism(format!("fails on the pair ({a}, {b})")));
                }
            }
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = g.elements().collect();
        Homomorphism { source: g.clone(), target: g, map }
    }

    /// Inclusion of a subgroup of `g`.
    pub fn inclusion(g: &Arc<FiniteGroup>, h: &[usize]) -> Result<Self, GroupError> {
        let (sub, map) = g.subgroup_as_group(h)?;
        Ok(Homomorphism { source: Arc::new(sub), target: g.clone(), map })
    }

    /// Projection onto `g / n`.
    pub fn projection(g: &Arc<FiniteGroup>, n: &[usize]) -> Result<Self, GroupError> {
        let (q, map) = g.quotient(n)?;
        Ok(Homomorphism { source: g.clone(), target: Arc::new(q), map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        self.source.elements().filter(|&x| self.map[x] == 0).collect()
    }
}
