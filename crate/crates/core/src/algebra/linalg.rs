//! Dense linear algebra over commutative rings (division-free) and over `Q`.

use num_traits::{One, Zero};

use super::Rational;

/// The small amount of ring structure the division-free algorithms need.
pub trait CommRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl CommRing for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl CommRing for i64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Characteristic polynomial `det(x I - A)` by Berkowitz's algorithm, ascending
/// coefficients, leading coefficient `one`. Uses no divisions.
pub fn berkowitz<T: CommRing>(a: &[Vec<T>], zero: &T, one: &T) -> Vec<T> {
    let n = a.len();
    // vector of coefficients of char poly of leading r x r block, descending
    let mut poly: Vec<T> = vec![one.clone()];
    for r in 0..n {
        // A_r = leading r x r block, R = row r restricted to first r cols,
        // C = column r restricted to first r rows, a_rr
        let arr = &a[r][r];
        // Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        let mut col: Vec<T> = Vec::with_capacity(r + 2);
        col.push(one.clone());
        col.push(arr.neg());
        let mut v: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(zero.clone(), |acc, j| acc.add(&a[r][j].mul(&v[j])));
            col.push(rc.neg());
            v = (0..r).map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add(&a[i][j].mul(&v[j])))).collect();
        }
        // new poly = T * poly, T lower-triangular Toeplitz (r+2) x (r+1)
        let mut next = vec![zero.clone(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    *slot = slot.add(&col[i - j].mul(pj));
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// Determinant via the constant term of the characteristic polynomial.
pub fn determinant<T: CommRing>(a: &[Vec<T>], zero: &T, one: &T) -> T {
    let cp = berkowitz(a, zero, one);
    if a.len().is_multiple_of(2) {
        cp[0].clone()
    } else {
        cp[0].neg()
    }
}

pub type QMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &QMatrix, c: &Rational) -> QMatrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn trace(a: &QMatrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(a: &mut QMatrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &QMatrix) -> usize {
    let mut m = a.clone();
    echelon(&mut m).len()
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let piv = echelon(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn charpoly_small() {
        let a = vec![vec![2i64, 1], vec![1, 3]];
        // x^2 - 5x + 5
        assert_eq!(berkowitz(&a, &0, &1), vec![5, -5, 1]);
        assert_eq!(determinant(&a, &0, &1), 5);
        let e: Vec<Vec<i64>> = vec![];
        assert_eq!(berkowitz(&e, &0, &1), vec![1]);
    }

    #[test]
    fn rank_and_inverse() {
        let a = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&a), 1);
        assert!(inverse(&a).is_none());
        let b = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(mat_mul(&b, &inverse(&b).unwrap()), identity(2));
    }

    fn cofactor_det(a: &[Vec<i64>]) -> i64 {
        if a.is_empty() {
            return 1;
        }
        let n = a.len();
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn berkowitz_det_matches_cofactor(n in 1usize..5, seed in prop::collection::vec(-4i64..5, 16)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            prop_assert_eq!(determinant(&a, &0, &1), cofactor_det(&a));
        }
    }
}
