//! Linear systems over the field with two elements.

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(bits: usize) -> Self {
        BitRow(vec![0; bits.div_ceil(WORD)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / WORD] >> (i % WORD) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / WORD] |= 1 << (i % WORD);
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// Solves `A x = b (mod 2)` for square `A`, requiring a unique solution.
/// Only the parity of each entry is used.
pub fn solve_unique(a: &[Vec<i64>], b: &[i64]) -> Result<Vec<bool>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    // augmented column lives at index n
    let mut rows: Vec<BitRow> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = BitRow::zeros(n + 1);
            for (j, v) in row.iter().enumerate() {
                if v.rem_euclid(2) == 1 {
                    r.set(j);
                }
            }
            if rhs.rem_euclid(2) == 1 {
                r.set(n);
            }
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| rows[r].get(col))
            .ok_or(Error::SingularMod2)?;
        rows.swap(col, pivot);
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
    }
    Ok(rows.iter().map(|r| r.get(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let a = vec![vec![1, 0], vec![0, 3]];
        assert_eq!(solve_unique(&a, &[1, 0]).unwrap(), vec![true, false]);
    }

    #[test]
    fn singular() {
        let a = vec![vec![1, 1], vec![3, -1]];
        assert!(matches!(solve_unique(&a, &[0, 0]), Err(Error::SingularMod2)));
    }

    #[test]
    fn wide_system() {
        // path graph on 70 vertices with odd diagonal: tridiagonal, invertible mod 2
        let n = 70;
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = -3;
            if i + 1 < n {
                a[i][i + 1] = 1;
                a[i + 1][i] = 1;
            }
        }
        let b: Vec<i64> = (0..n as i64).collect();
        let x = solve_unique(&a, &b).unwrap();
        for i in 0..n {
            let s: i64 = (0..n).filter(|&j| x[j]).map(|j| a[i][j]).sum();
            assert_eq!(s.rem_euclid(2), b[i].rem_euclid(2));
        }
    }
}
