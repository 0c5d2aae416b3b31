//! Exact solution of rational linear systems with cyclotomic right-hand sides.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;

/// Picks up to `rank` linearly independent rows of a float matrix by
/// Gaussian elimination with partial pivoting.
pub fn independent_rows(a: &[Vec<f64>]) -> Vec<usize> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<f64>> = a.to_vec();
    let mut chosen = Vec::new();
    let mut used = vec![false; m];
    for col in 0..n {
        let mut best = None;
        let mut best_val = 1e-9;
        for (r, row) in work.iter().enumerate() {
            if !used[r] && row[col].abs() > best_val {
                best_val = row[col].abs();
                best = Some(r);
            }
        }
        let Some(p) = best else { continue };
        used[p] = true;
        chosen.push(p);
        let prow = work[p].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if used[r] {
                continue;
            }
            let f = row[col] / prow[col];
            if f != 0.0 {
                for j in col..n {
                    row[j] -= f * prow[j];
                }
            }
        }
    }
    chosen
}

/// Solves `A x = b` exactly where `A` is square-or-tall rational and `b`
/// cyclotomic. Returns a solution with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut mat: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<Cyclotomic> = b.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&r| !mat[r][col].is_zero()) else { continue };
        mat.swap(row, p);
        rhs.swap(row, p);
        let inv = mat[row][col].recip();
        for j in col..n {
            mat[row][j] = &mat[row][j] * &inv;
        }
        rhs[row] = rhs[row].scale(&inv);
        for r in 0..m {
            if r == row || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            for j in col..n {
                let delta = &f * &mat[row][j];
                mat[r][j] -= delta;
            }
            let delta = rhs[row].scale(&f);
            rhs[r] -= &delta;
        }
        pivots.push(col);
        row += 1;
    }
    if rhs[row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Cyclotomic::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rhs[r].clone();
    }
    Some(x)
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut mat = a.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !mat[i][col].is_zero()) else { continue };
        mat.swap(r, p);
        for i in r + 1..m {
            if mat[i][col].is_zero() {
                continue;
            }
            let f = &mat[i][col] / &mat[r][col];
            for j in col..n {
                let delta = &f * &mat[r][j];
                mat[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}

pub fn rational(v: i64) -> BigRational {
    if v == 1 {
        BigRational::one()
    } else {
        BigRational::from_integer(v.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_with_irrational_rhs() {
        let a = vec![vec![rational(1), rational(1)], vec![rational(1), rational(-1)], vec![rational(2), rational(0)]];
        let s5 = Cyclotomic::sqrt5();
        let b = vec![s5.clone(), Cyclotomic::one(), &s5 + &Cyclotomic::one()];
        let x = solve(&a, &b).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(x[0], (&s5 + &Cyclotomic::one()).scale(&half));
        let bad = vec![s5.clone(), Cyclotomic::one(), Cyclotomic::zero()];
        assert!(solve(&a, &bad).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let a = vec![vec![rational(1), rational(2)], vec![rational(2), rational(4)]];
        assert_eq!(rank(&a), 1);
    }
}
