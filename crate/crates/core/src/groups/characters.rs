//! Irreducible characters.
//!
//! Abelian groups: homomorphisms to roots of unity, built by extending along
//! one generator at a time. Nonabelian groups: the class-sum eigenvector method
//! over `F_l` with `l = 1 mod exponent`, lifted to `Q(zeta_exponent)` through
//! eigenvalue multiplicities and checked by exact orthogonality.

use std::sync::Arc;

use num_rational::BigRational;

use super::class_function::ClassFunction;
use super::group::FiniteGroup;
use super::GroupError;
use crate::algebra::finite_field::{is_prime, prime_factors};
use crate::algebra::linalg::{berkowitz, CommRing};
use crate::algebra::Cyclotomic;

pub const DEFAULT_ORDER_BOUND: usize = 256;

pub fn irreducible_characters(g: &Arc<FiniteGroup>) -> Result<Vec<ClassFunction>, GroupError> {
    irreducible_characters_bounded(g, DEFAULT_ORDER_BOUND)
}

pub fn irreducible_characters_bounded(g: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<ClassFunction>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: g.order(), bound });
    }
    let table = g.char_table.get_or_init(|| compute_table(g)).clone()?;
    Ok(table.into_iter().map(|row| ClassFunction::new(g.clone(), row).unwrap()).collect())
}

fn compute_table(g: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>, GroupError> {
    let mut rows = if g.is_abelian() { abelian_table(g) } else { dixon_table(g)? };
    let n = g.exponent() as u32;
    let key = |row: &Vec<Cyclotomic>| {
        let trivial = row.iter().all(|v| *v == Cyclotomic::one());
        let coords: Vec<Vec<BigRational>> = row.iter().map(|v| v.embed(n).coordinates()).collect();
        (row[0].as_i64().unwrap_or(0), !trivial, coords)
    };
    rows.sort_by_cached_key(key);
    Ok(rows)
}

fn abelian_table(g: &FiniteGroup) -> Vec<Vec<Cyclotomic>> {
    let n = g.exponent();
    // Characters as exponent vectors: chi(x) = zeta_n^{k[x]}; None off the current subgroup.
    let mut members = vec![0usize];
    let mut in_h = vec![false; g.order()];
    in_h[0] = true;
    let mut chars: Vec<Vec<usize>> = vec![vec![0; g.order()]];
    while members.len() < g.order() {
        let x = (0..g.order()).find(|&x| !in_h[x]).unwrap();
        let (mut s, mut xs) = (1, x);
        while !in_h[xs] {
            xs = g.mul(xs, x);
            s += 1;
        }
        let mut new_members = Vec::with_capacity(members.len() * s);
        let mut xj = 0;
        for _ in 0..s {
            for &h in &members {
                new_members.push(g.mul(h, xj));
            }
            xj = g.mul(xj, x);
        }
        let mut next = Vec::with_capacity(chars.len() * s);
        for chi in &chars {
            // chi(x)^s must equal chi(x^s)
            let c = chi[xs];
            let base = c / s;
            for branch in 0..s {
                let val = (base + branch * n / s) % n;
                let mut ext = chi.clone();
                let mut xj = 0;
                for j in 0..s {
                    for &h in &members {
                        ext[g.mul(h, xj)] = (chi[h] + j * val) % n;
                    }
                    xj = g.mul(xj, x);
                }
                next.push(ext);
            }
        }
        for &y in &new_members {
            in_h[y] = true;
        }
        members = new_members;
        chars = next;
    }
    chars.into_iter().map(|ks| g.classes().iter().map(|c| Cyclotomic::root_of_unity(n as u32, ks[c[0]] as i64)).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Fl {
    v: u64,
    l: u64,
}

impl CommRing for Fl {
    fn add(&self, o: &Self) -> Self {
        Fl { v: (self.v + o.v) % self.l, l: self.l }
    }
    fn mul(&self, o: &Self) -> Self {
        Fl { v: self.v * o.v % self.l, l: self.l }
    }
    fn neg(&self) -> Self {
        Fl { v: (self.l - self.v) % self.l, l: self.l }
    }
}

fn pow_mod(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1 % l;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % l;
        }
        a = a * a % l;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, l: u64) -> u64 {
    pow_mod(a, l - 2, l)
}

fn primitive_root(l: u64) -> u64 {
    let factors = prime_factors(l - 1);
    (2..l).find(|&g| factors.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1)).unwrap_or(1)
}

/// Row-reduce the given vectors mod `l`; returns the nonzero rows and pivots.
fn rref(mut rows: Vec<Vec<u64>>, l: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], l);
        for x in rows[r].iter_mut() {
            *x = *x * inv % l;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + l * l - f * rows[r][j]) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of the null space of a square matrix mod `l`.
fn nullspace(m: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let d = m.len();
    let (red, pivots) = rref(m.to_vec(), l);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; d];
            v[f] = 1;
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

fn dixon_table(g: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>, GroupError> {
    let n = g.order() as u64;
    let k = g.class_count();
    let exp = g.exponent() as u64;
    let mut l = exp + 1;
    while !(is_prime(l) && l * l > 4 * n) {
        l += exp;
    }
    let classes = g.classes();
    let fail = |m: &str| GroupError::CharacterTableFailure(m.to_string());

    // class_mats[r][s][t] = #{x in C_r : x^-1 z_t in C_s}
    let class_matrix = |r: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; k]; k];
        for (t, ct) in classes.iter().enumerate() {
            let z = ct[0];
            for &x in &classes[r] {
                let s = g.class_of(g.mul(g.inv(x), z));
                m[s][t] += 1;
            }
        }
        m
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for r in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(r);
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let (basis, pivots) = rref(space, l);
            let d = basis.len();
            // restricted[j][i] = coordinate j of M b_i
            let images: Vec<Vec<u64>> =
                basis.iter().map(|b| (0..k).map(|s| (0..k).fold(0, |acc, t| (acc + m[s][t] * b[t]) % l)).collect()).collect();
            let restricted: Vec<Vec<Fl>> = (0..d).map(|j| (0..d).map(|i| Fl { v: images[i][pivots[j]], l }).collect()).collect();
            let cp = berkowitz(&restricted, &Fl { v: 0, l }, &Fl { v: 1, l });
            let roots: Vec<u64> = (0..l).filter(|&x| cp.iter().rev().fold(0, |acc, c| (acc * x + c.v) % l) == 0).collect();
            if roots.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut covered = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> =
                    (0..d).map(|j| (0..d).map(|i| (restricted[j][i].v + if i == j { l - lam } else { 0 }) % l).collect()).collect();
                let eig: Vec<Vec<u64>> = nullspace(&shifted, l)
                    .into_iter()
                    .map(|c| (0..k).map(|t| (0..d).fold(0, |acc, i| (acc + c[i] * basis[i][t]) % l)).collect())
                    .collect();
                covered += eig.len();
                next.push(eig);
            }
            if covered != d {
                return Err(fail("class-sum operators are not diagonalizable mod l"));
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(fail("simultaneous eigenspaces did not separate"));
    }

    let z = pow_mod(primitive_root(l), (l - 1) / exp, l);
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c[0]))).collect();
    let max_deg = (1..=n).take_while(|d| d * d <= n).last().unwrap_or(1);
    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let w0 = &space[0];
        if w0[0] == 0 {
            return Err(fail("eigenvector with vanishing identity coordinate"));
        }
        let inv0 = inv_mod(w0[0], l);
        let w: Vec<u64> = w0.iter().map(|x| x * inv0 % l).collect();
        let s = (0..k).fold(0, |acc, t| (acc + w[t] * w[inv_class[t]] % l * inv_mod(sizes[t] % l, l)) % l);
        if s == 0 {
            return Err(fail("degenerate central character"));
        }
        let d2 = n % l * inv_mod(s, l) % l;
        let d = (1..=max_deg).find(|d| d * d % l == d2).ok_or_else(|| fail("no degree matches"))?;
        let chi_mod: Vec<u64> = (0..k).map(|t| d * w[t] % l * inv_mod(sizes[t] % l, l) % l).collect();
        let mut row = Vec::with_capacity(k);
        for cls in classes {
            let x = cls[0];
            let o = g.element_order(x) as u64;
            let step = exp / o;
            let powers: Vec<u64> = (0..o).map(|j| chi_mod[g.class_of(g.pow(x, j as i64))]).collect();
            let inv_o = inv_mod(o % l, l);
            let mut counts = vec![0i64; exp as usize];
            let mut total = 0;
            for kk in 0..o {
                let mu = (0..o).fold(0, |acc, j| {
                    let e = (exp - (step * j * kk) % exp) % exp;
                    (acc + powers[j as usize] * pow_mod(z, e, l)) % l
                }) * inv_o
                    % l;
                if mu > d {
                    return Err(fail("eigenvalue multiplicity out of range"));
                }
                counts[(kk * step) as usize] += mu as i64;
                total += mu;
            }
            if total != d {
                return Err(fail("eigenvalue multiplicities do not sum to the degree"));
            }
            row.push(Cyclotomic::from_power_counts(exp as u32, &counts));
        }
        rows.push(row);
    }
    verify_orthonormal(g, &rows)?;
    Ok(rows)
}

fn verify_orthonormal(g: &FiniteGroup, rows: &[Vec<Cyclotomic>]) -> Result<(), GroupError> {
    let classes = g.classes();
    let inv_class: Vec<usize> = classes.iter().map(|c| g.class_of(g.inv(c[0]))).collect();
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i) {
            let mut s = Cyclotomic::zero();
            for (t, c) in classes.iter().enumerate() {
                s = &s + &(&a[t] * &b[inv_class[t]]).scale_int(c.len() as i64);
            }
            let expected = if i == j { g.order() as i64 } else { 0 };
            if s != Cyclotomic::from_int(expected) {
                return Err(GroupError::CharacterTableFailure(format!("lifted table fails orthogonality at ({i}, {j})")));
            }
        }
    }
    Ok(())
}
