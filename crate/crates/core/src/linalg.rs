//! Small exact integer matrix routines (fraction-free elimination).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Determinant by Bareiss elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let (f, g) = (a[r][c].clone(), a[i][c].clone());
                for j in 0..cols {
                    let v = &a[i][j] * &f - &a[r][j] * &g;
                    a[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

/// All leading principal minors are positive.
pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor).is_positive()
    })
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
        let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(det(&a3), BigInt::from(4));
        assert!(is_positive_definite(&a3));
        assert!(!is_positive_definite(&[vec![2, -2], vec![-2, 2]]));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![2, -2], vec![-2, 2]]), 1);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), 2);
    }
}
