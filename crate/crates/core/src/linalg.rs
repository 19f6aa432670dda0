//! Small dense integer matrices.
//!
//! Everything here is exact. Ranks are computed with fraction-free
//! (Bareiss) elimination in `i128`, which is ample for the ranks and entry
//! sizes that occur for finite root systems.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A square integer matrix stored row-major, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Inverse of an upper unitriangular matrix, by back substitution.
    pub fn unitriangular_inverse(&self) -> Option<Self> {
        let n = self.n;
        for i in 0..n {
            if self.get(i, i) != 1 {
                return None;
            }
            for j in 0..i {
                if self.get(i, j) != 0 {
                    return None;
                }
            }
        }
        let mut inv = Self::identity(n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = if i == col { 1 } else { 0 };
                for k in i + 1..n {
                    acc -= self.get(i, k) * inv.get(k, col);
                }
                inv.set(i, col, acc);
            }
        }
        Some(inv)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<i128>> = self.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut rank = 0;
        let mut prev = 1i128;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..n {
                for c in col + 1..n {
                    a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
                }
                a[r][col] = 0;
            }
            prev = a[rank][col];
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitriangular_inverse_roundtrip() {
        let e = IntMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]);
        let inv = e.unitriangular_inverse().unwrap();
        assert!(e.mul(&inv).is_identity());
        assert!(inv.mul(&e).is_identity());
    }

    #[test]
    fn rank_small() {
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        assert_eq!(IntMatrix::zero(3).rank(), 0);
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let m = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 0, 2], vec![0, 0, 3]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn non_unitriangular_has_no_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(m.unitriangular_inverse().is_none());
    }
}
