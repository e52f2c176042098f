use super::matrix::sub_scaled;
use super::{Matrix, Submodule};
use crate::error::{Error, Result};

/// Solution set `particular + kernel` of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u64>,
    pub kernel: Submodule,
}

/// Howell form of `[A^T | I]`. Every row `(w, y)` satisfies `w = A y`.
fn augmented(a: &Matrix) -> Submodule {
    let (m, n) = (a.rows(), a.cols());
    let gens = (0..n).map(|j| {
        let mut row = vec![0; m + n];
        for i in 0..m {
            row[i] = a.get(i, j);
        }
        row[m + j] = 1;
        row
    });
    Submodule::from_generators(a.ctx(), m + n, gens)
}

/// `{x : A x = 0}`.
pub fn kernel(a: &Matrix) -> Submodule {
    augmented(a).tail_block(a.rows())
}

/// Solves `A x = b` over `Z/p^k`.
pub fn solve(a: &Matrix, b: &[u64]) -> Result<Solution> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    let ctx = a.ctx();
    let aug = augmented(a);
    let mut rest = vec![0; m + n];
    for (i, &x) in b.iter().enumerate() {
        rest[i] = ctx.reduce(x);
    }
    let mut next_col = 0;
    for (row, &(c, j)) in aug.rows().iter().zip(aug.pivots()) {
        if c >= m {
            break;
        }
        if rest[next_col..c].iter().any(|&x| x != 0) {
            return Err(Error::NoSolution);
        }
        let pj = ctx.p_pow(j);
        if rest[c] % pj != 0 {
            return Err(Error::NoSolution);
        }
        let q = rest[c] / pj;
        sub_scaled(&ctx, &mut rest, q, row);
        next_col = c + 1;
    }
    if rest[..m].iter().any(|&x| x != 0) {
        return Err(Error::NoSolution);
    }
    let particular = rest[m..].iter().map(|&x| ctx.neg(x)).collect();
    Ok(Solution {
        particular,
        kernel: aug.tail_block(m),
    })
}
