use super::ZpkContext;
use crate::error::{Error, Result};

/// Dense row-major matrix of residues mod p^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: ZpkContext,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(ctx: ZpkContext, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ctx: ZpkContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ctx.modulus();
        }
        m
    }

    /// Builds from rows, reducing every entry. All rows must share `cols`.
    pub fn from_rows(ctx: ZpkContext, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| ctx.reduce(x)));
        }
        Ok(Matrix {
            ctx,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn ctx(&self) -> ZpkContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.ctx.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `A x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| self.ctx.add(acc, self.ctx.mul(a, b)))
            })
            .collect())
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if other.cols != self.cols || other.ctx != self.ctx {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            ctx: self.ctx,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }
}

/// `row -= q * other` entrywise mod p^k.
#[inline]
pub(crate) fn sub_scaled(ctx: &ZpkContext, row: &mut [u64], q: u64, other: &[u64]) {
    if q == 0 {
        return;
    }
    for (a, &b) in row.iter_mut().zip(other) {
        if b != 0 {
            *a = ctx.sub(*a, ctx.mul(q, b));
        }
    }
}

#[inline]
pub(crate) fn scale(ctx: &ZpkContext, row: &mut [u64], q: u64) {
    for a in row.iter_mut() {
        *a = ctx.mul(*a, q);
    }
}
