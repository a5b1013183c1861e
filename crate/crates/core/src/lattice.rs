//! Integer symmetric bilinear forms: pairing, exact inertia and determinant.
//!
//! Inertia is computed by a symmetric rational LDLᵀ reduction. When every
//! remaining diagonal entry vanishes but an off-diagonal one does not, the
//! reduction first applies the congruence `row_i += row_j, col_i += col_j`,
//! which makes the new diagonal entry `2·a_ij + a_jj = 2·a_ij` nonzero.
//! The determinant is computed separately by fraction-free Bareiss
//! elimination so the two routes can check each other.

use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Counts of positive, negative and zero eigenvalues (Sylvester inertia).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// `xᵀ Q y` for integer vectors.
pub fn pair(form: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0i64;
    for (i, row) in form.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let mut r = 0i64;
        for (j, &a) in row.iter().enumerate() {
            r += a * y[j];
        }
        acc += x[i] * r;
    }
    acc
}

/// `xᵀ Q y` with a rational right-hand vector.
pub fn pair_q(form: &[Vec<i64>], x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, row) in form.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        let mut r = Q::zero();
        for (j, &a) in row.iter().enumerate() {
            if a != 0 && !y[j].is_zero() {
                r += &y[j] * BigInt::from(a);
            }
        }
        acc += &x[i] * r;
    }
    acc
}

pub fn is_symmetric(form: &[Vec<i64>]) -> Option<(usize, usize)> {
    let n = form.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if form[i][j] != form[j][i] {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_square(form: &[Vec<i64>]) -> bool {
    form.iter().all(|row| row.len() == form.len())
}

/// Inertia of a symmetric integer matrix via rational LDLᵀ with pivoting.
pub fn inertia(form: &[Vec<i64>]) -> Inertia {
    let n = form.len();
    let mut a: Vec<Vec<Q>> = form
        .iter()
        .map(|row| row.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };

    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // All diagonal entries vanish; look for an off-diagonal one.
                let mut found = None;
                'outer: for (pi, &i) in active.iter().enumerate() {
                    for &j in &active {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((pi, i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => {
                        out.zero += active.len();
                        break;
                    }
                    Some((pi, i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        pi
                    }
                }
            }
        };
        let p = active.swap_remove(pivot);
        let d = a[p][p].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &active {
            a[i][p] = Q::zero();
            a[p][i] = Q::zero();
        }
    }
    out
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(form: &[Vec<i64>]) -> BigInt {
    let n = form.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = form
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Solves `Q x ≡ diag(Q) (mod 2)`, the coordinates of a characteristic
/// vector reduced mod 2. Returns `None` when `Q` is singular mod 2.
pub fn characteristic_mod2(form: &[Vec<i64>]) -> Option<Vec<bool>> {
    let n = form.len();
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            let mut r: Vec<bool> = form[i].iter().map(|&x| x.rem_euclid(2) == 1).collect();
            r.push(form[i][i].rem_euclid(2) == 1);
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| rows[r][col])?;
        rows.swap(col, p);
        for r in 0..n {
            if r != col && rows[r][col] {
                let src = rows[col].clone();
                for (x, s) in rows[r].iter_mut().zip(src) {
                    *x ^= s;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> Vec<Vec<i64>> {
        // Negative definite E8 (Cartan matrix, negated).
        let mut m = vec![vec![0i64; 8]; 8];
        for i in 0..8 {
            m[i][i] = -2;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        for (i, j) in edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    #[test]
    fn hyperbolic_plane() {
        let h = vec![vec![0, 1], vec![1, 0]];
        let i = inertia(&h);
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        assert_eq!(determinant(&h), BigInt::from(-1));
        assert_eq!(characteristic_mod2(&h), Some(vec![false, false]));
    }

    #[test]
    fn e8_is_even_unimodular_negative_definite() {
        let m = e8();
        let i = inertia(&m);
        assert_eq!(i.signature(), -8);
        assert_eq!(determinant(&m), BigInt::one());
        assert_eq!(characteristic_mod2(&m), Some(vec![false; 8]));
    }

    #[test]
    fn degenerate_form() {
        let m = vec![vec![1, 1], vec![1, 1]];
        let i = inertia(&m);
        assert_eq!((i.positive, i.zero), (1, 1));
        assert!(determinant(&m).is_zero());
        assert_eq!(characteristic_mod2(&m), None);
    }

    #[test]
    fn diagonal_characteristic() {
        let m = vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]];
        assert_eq!(characteristic_mod2(&m), Some(vec![true; 3]));
        assert_eq!(pair(&m, &[1, 2, 3], &[1, 2, 3]), 1 - 4 + 9);
    }
}
