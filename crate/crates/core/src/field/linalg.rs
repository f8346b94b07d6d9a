//! Dense linear algebra over `F_p`.

use super::modp;

/// Row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate().take(rows) {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc: u64 = 0;
            for (k, (&a, &b)) in row.iter().zip(v).enumerate() {
                acc += a as u64 * b as u64;
                if k % 4096 == 4095 {
                    acc %= p as u64;
                }
            }
            *o = (acc % p as u64) as u32;
        }
        out
    }

    pub fn mul(&self, other: &Matrix, p: u32) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let col = other.column(j);
            let v = self.mul_vec(&col, p);
            for (i, x) in v.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self, p: u32) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j);
            }
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * w + col] != 0)?;
            if piv != col {
                for k in 0..w {
                    a.swap(piv * w + k, col * w + k);
                }
            }
            let inv = modp::inv(a[col * w + col], p);
            for k in 0..w {
                a[col * w + k] = modp::mul(a[col * w + k], inv, p);
            }
            let pivot_row: Vec<u32> = a[col * w..(col + 1) * w].to_vec();
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * w + col];
                if f == 0 {
                    continue;
                }
                let row = &mut a[r * w..(r + 1) * w];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = modp::sub(*x, modp::mul(f, y, p), p);
                    }
                }
            }
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i * w + n + j]);
            }
        }
        Some(out)
    }

    /// Solves `self * x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[u32], p: u32) -> Option<Vec<u32>> {
        let (n, m) = (self.rows, self.cols);
        let w = m + 1;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            for j in 0..m {
                a[i * w + j] = self.get(i, j);
            }
            a[i * w + m] = b[i];
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(piv) = (row..n).find(|&r| a[r * w + col] != 0) else {
                continue;
            };
            if piv != row {
                for k in 0..w {
                    a.swap(piv * w + k, row * w + k);
                }
            }
            let inv = modp::inv(a[row * w + col], p);
            for k in 0..w {
                a[row * w + k] = modp::mul(a[row * w + k], inv, p);
            }
            let pivot_row: Vec<u32> = a[row * w..(row + 1) * w].to_vec();
            for r in 0..n {
                if r == row {
                    continue;
                }
                let f = a[r * w + col];
                if f == 0 {
                    continue;
                }
                let dst = &mut a[r * w..(r + 1) * w];
                for (x, &y) in dst.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = modp::sub(*x, modp::mul(f, y, p), p);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if (row..n).any(|r| a[r * w + m] != 0) {
            return None;
        }
        let mut x = vec![0u32; m];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r * w + m];
        }
        Some(x)
    }
}
