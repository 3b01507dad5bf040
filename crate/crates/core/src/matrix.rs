//! Small exact integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<i64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Bilinear form `xᵀ M x`.
    pub fn quadratic(&self, x: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += x[i] * self.get(i, j) * x[j];
            }
        }
        acc
    }

    pub fn determinant(&self) -> BigInt {
        bareiss(self).0
    }

    /// Leading principal minors `Δ_1, ..., Δ_n`. Stops early (returning a
    /// shorter vector ending in zero) when a minor vanishes.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        bareiss(self).1
    }
}

/// Fraction-free elimination without pivoting: after step `k` the pivot is
/// the leading `(k+1) × (k+1)` minor. When a pivot vanishes the remaining
/// submatrix is pivoted on a row swap to finish the determinant.
fn bareiss(m: &SquareMatrix) -> (BigInt, Vec<BigInt>) {
    let n = m.n;
    if n == 0 {
        return (BigInt::one(), Vec::new());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut minors_done = false;
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            if !minors_done {
                minors.push(BigInt::zero());
                minors_done = true;
            }
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return (BigInt::zero(), minors),
            }
        } else if !minors_done {
            minors.push(a[k][k].clone());
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    (sign * &a[n - 1][n - 1], minors)
}

/// Exact integer square root test.
pub fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &(&r * &r) == v
}
