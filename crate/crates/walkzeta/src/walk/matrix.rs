use std::ops::{Index, IndexMut};

use crate::algebra::QuadRat;

/// Dense square matrix over Q(√2), row-major. Walk operators are sparse
/// (at most three nonzero blocks per block row), so the arithmetic routines
/// skip structural zeros rather than maintaining a sparse format.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    dim: usize,
    data: Vec<QuadRat>,
}

impl QMatrix {
    pub fn zeros(dim: usize) -> Self {
        QMatrix { dim, data: vec![QuadRat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = QuadRat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[QuadRat] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            self.row(i).iter().enumerate().all(|(j, c)| {
                if i == j {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            })
        })
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[QuadRat]) -> Vec<QuadRat> {
        assert_eq!(self.dim, v.len());
        (0..self.dim)
            .map(|i| {
                let mut acc = QuadRat::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> QMatrix {
        let mut base = self.clone();
        let mut acc = QMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.dim;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
    }

    /// Exact determinant by Gaussian elimination over Q(√2). Row updates only
    /// touch the nonzero support of the pivot row, which keeps the cost near
    /// O(dim · bandwidth²) for the banded-plus-corners walk matrices. A zero
    /// column under the pivot means a zero determinant.
    pub fn determinant(mut self) -> QuadRat {
        let n = self.dim;
        let mut det = QuadRat::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !self[(i, k)].is_zero()) else {
                return QuadRat::zero();
            };
            if p != k {
                self.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = self[(k, k)].clone();
            let pivot_inv = pivot.inverse().expect("pivot is nonzero");
            det = &det * &pivot;
            let pivot_row: Vec<(usize, QuadRat)> = (k + 1..n)
                .filter(|&j| !self[(k, j)].is_zero())
                .map(|j| (j, self[(k, j)].clone()))
                .collect();
            for i in k + 1..n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                let factor = &self[(i, k)] * &pivot_inv;
                self[(i, k)] = QuadRat::zero();
                for (j, c) in &pivot_row {
                    self[(i, *j)].sub_mul_assign(&factor, c);
                }
            }
        }
        if negate {
            -det
        } else {
            det
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = QuadRat;
    fn index(&self, (i, j): (usize, usize)) -> &QuadRat {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QuadRat {
        &mut self.data[i * self.dim + j]
    }
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
