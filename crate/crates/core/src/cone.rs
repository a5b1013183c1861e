//! Exact rational linear algebra for effective-cone questions: coordinates
//! in a spanning set and membership in a finitely generated cone.
//!
//! Cone membership `∃ λ ≥ 0 : Σ λᵢ gᵢ = v` is decided by phase-one simplex
//! over `Q` with Bland's rule, so it terminates and never rounds.

use crate::rational::Q;
use num_traits::{One, Signed, Zero};

/// Unique rational coordinates of `target` in the linearly independent
/// family `basis`. `None` if `target` is outside the span or the family is
/// dependent.
pub fn coordinates(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = basis.len();
    let dim = target.len();
    if basis.iter().any(|b| b.len() != dim) {
        return None;
    }
    // Augmented system: rows are ambient coordinates, columns basis vectors.
    let mut a: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let p = (pivot_row..dim).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..dim {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let src = a[pivot_row].clone();
                for (x, s) in a[r].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        pivot_row += 1;
    }
    if a[n..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some(a[..n].iter().map(|row| row[n].clone()).collect())
}

pub fn is_linearly_independent(vectors: &[Vec<Q>]) -> bool {
    match vectors.first() {
        None => true,
        Some(v) => {
            let zero = vec![Q::zero(); v.len()];
            coordinates(vectors, &zero).is_some()
        }
    }
}

/// Whether `target` is a non-negative rational combination of `generators`.
pub fn in_cone(generators: &[Vec<Q>], target: &[Q]) -> bool {
    let rows = target.len();
    let n = generators.len();
    if generators.iter().any(|g| g.len() != rows) {
        return false;
    }
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    if n == 0 {
        return false;
    }
    // Tableau [A | I | b] with b ≥ 0; columns n..n+rows are artificial.
    let width = n + rows + 1;
    let mut t: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let flip = target[i].is_negative();
            let mut row = vec![Q::zero(); width];
            for (j, g) in generators.iter().enumerate() {
                row[j] = if flip { -&g[i] } else { g[i].clone() };
            }
            row[n + i] = Q::one();
            row[width - 1] = target[i].abs();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + rows).collect();
    let cost = |j: usize| if j >= n { Q::one() } else { Q::zero() };

    loop {
        // Bland: lowest-index column with negative reduced cost enters.
        let entering = (0..n + rows).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost(j);
            for (i, &bi) in basis.iter().enumerate() {
                d -= cost(bi) * &t[i][j];
            }
            d.is_negative()
        });
        let Some(j) = entering else { break };
        // Ratio test; ties broken by lowest basic index.
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if t[i][j].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one objective is bounded");
        let inv = t[r][j].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                let src = t[r].clone();
                for (x, s) in t[i].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        basis[r] = j;
    }
    basis
        .iter()
        .enumerate()
        .all(|(i, &b)| b < n || t[i][width - 1].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qvec, ratio};

    #[test]
    fn coordinates_basic() {
        let basis = vec![qvec(&[1, 1]), qvec(&[0, 2])];
        assert_eq!(
            coordinates(&basis, &qvec(&[1, 3])),
            Some(vec![ratio(1, 1), ratio(1, 1)])
        );
        assert_eq!(
            coordinates(&basis, &qvec(&[1, 2])),
            Some(vec![ratio(1, 1), ratio(1, 2)])
        );
        let line = vec![qvec(&[1, 1])];
        assert_eq!(coordinates(&line, &qvec(&[1, 2])), None);
        assert!(!is_linearly_independent(&[qvec(&[1, 2]), qvec(&[2, 4])]));
    }

    #[test]
    fn cone_membership() {
        let gens = vec![qvec(&[1, 0]), qvec(&[1, 1])];
        assert!(in_cone(&gens, &qvec(&[3, 1])));
        assert!(in_cone(&gens, &qvec(&[1, 1])));
        assert!(!in_cone(&gens, &qvec(&[0, 1])));
        assert!(!in_cone(&gens, &qvec(&[-1, 0])));
        assert!(in_cone(&gens, &qvec(&[0, 0])));
        assert!(!in_cone(&[], &qvec(&[1])));
        assert!(in_cone(&[qvec(&[1])], &qvec(&[2])));
        assert!(!in_cone(&[qvec(&[1])], &qvec(&[-1])));
    }

    #[test]
    fn degenerate_generators() {
        // Redundant and opposite generators: the cone is the whole line.
        let gens = vec![qvec(&[1]), qvec(&[2]), qvec(&[-1])];
        assert!(in_cone(&gens, &qvec(&[-5])));
    }
}
