//! Small exact linear-algebra helpers over `ℤ` and `ℚ`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::series::Rational;

/// Rank of a rational matrix by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][col].clone();
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| {
            let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion.
pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    leading_minors(m).iter().all(|d| d.is_positive())
}

/// `Q(x) = Σ_i d_i (x_i + Σ_{j>i} mu[i][j] x_j)^2` for a positive definite Gram matrix.
#[derive(Clone, Debug)]
pub struct SquareCompletion {
    pub d: Vec<Rational>,
    pub mu: Vec<Vec<Rational>>,
}

pub fn complete_squares(m: &[Vec<i64>]) -> Option<SquareCompletion> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let di = a[i][i].clone();
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &di;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let delta = &mu[i][j] * &a[i][k];
                a[j][k] -= delta;
            }
        }
        d.push(di);
    }
    Some(SquareCompletion { d, mu })
}

/// Echelon basis of the `ℤ`-span of integer vectors (Euclidean row reduction).
pub fn integer_row_basis(vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(ncols) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<i64>> = vectors.to_vec();
    let mut basis = Vec::new();
    for col in 0..ncols {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    basis.push(rows.swap_remove(i));
                }
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            let pivot = rows[p].clone();
            for &i in &nz[1..] {
                let q = rows[i][col] / pivot[col];
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
    }
    basis
}
