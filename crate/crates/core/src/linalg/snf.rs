//! Smith normal form over `Z/p^k`, used for saturation and as an
//! independent membership route (no Howell machinery involved).

use super::matrix::{scale, sub_scaled};
use super::{Submodule, ZpkContext};

/// `M C = U D` with `D` diagonal of pure powers `p^{d_t}`. Only the
/// column transform `C` and its inverse `W` are kept, since row operations
/// do not change the row span: `span(M) = span{p^{d_t} W_t}`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub ctx: ZpkContext,
    pub n: usize,
    /// Valuations of the nonzero diagonal entries, in order.
    pub exponents: Vec<u32>,
    /// Column transform, row-major `n x n`.
    pub c: Vec<Vec<u64>>,
    /// Inverse of `c`.
    pub w: Vec<Vec<u64>>,
}

pub fn smith_form(ctx: ZpkContext, n: usize, gens: &[Vec<u64>]) -> SmithForm {
    let mut m: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| g.iter().map(|&x| ctx.reduce(x)).collect())
        .collect();
    let ident = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1 % ctx.modulus();
        v
    };
    // c is stored by columns for convenient column operations
    let mut c_cols: Vec<Vec<u64>> = (0..n).map(ident).collect();
    let mut w: Vec<Vec<u64>> = (0..n).map(ident).collect();
    let mut exponents = Vec::new();
    let rows = m.len();
    for t in 0..rows.min(n) {
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ctx.valuation(x);
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((i, j, v)) = best else { break };
        m.swap(t, i);
        if j != t {
            for row in m.iter_mut() {
                row.swap(t, j);
            }
            c_cols.swap(t, j);
            w.swap(t, j);
        }
        let (_, unit) = ctx.split(m[t][t]);
        let unit_inv = ctx.inverse(unit).expect("unit part");
        scale(&ctx, &mut m[t], unit_inv);
        let pv = ctx.p_pow(v);
        let pivot_row = m[t].clone();
        for row in m.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let q = row[t] / pv;
                sub_scaled(&ctx, row, q, &pivot_row);
            }
        }
        for col in t + 1..n {
            let entry = m[t][col];
            if entry == 0 {
                continue;
            }
            let q = entry / pv;
            // col_col -= q col_t in M and C; row_t += q row_col in W
            for row in m.iter_mut() {
                row[col] = ctx.sub(row[col], ctx.mul(q, row[t]));
            }
            let ct = c_cols[t].clone();
            sub_scaled(&ctx, &mut c_cols[col], q, &ct);
            let wc = w[col].clone();
            sub_scaled(&ctx, &mut w[t], ctx.neg(q), &wc);
        }
        exponents.push(v);
    }
    let c = (0..n)
        .map(|r| (0..n).map(|col| c_cols[col][r]).collect())
        .collect();
    SmithForm {
        ctx,
        n,
        exponents,
        c,
        w,
    }
}

impl SmithForm {
    /// Membership test `v in span`: `v C` must have `t`-th entry divisible
    /// by `p^{d_t}` and vanish beyond the rank.
    pub fn contains(&self, v: &[u64]) -> bool {
        let ctx = self.ctx;
        let z: Vec<u64> = (0..self.n)
            .map(|col| {
                v.iter().zip(&self.c).fold(0, |acc, (&x, row)| {
                    ctx.add(acc, ctx.mul(ctx.reduce(x), row[col]))
                })
            })
            .collect();
        z.iter()
            .enumerate()
            .all(|(t, &x)| match self.exponents.get(t) {
                Some(&d) => x % ctx.p_pow(d) == 0,
                None => x == 0,
            })
    }
}

/// p-saturation: replaces each elementary divisor `p^d` with `d < k` by 1.
///
/// At finite precision the saturation of the underlying lattice is only
/// determined modulo `p^(k - d_max)`; the Smith basis fixes one lift. For a
/// submodule that is already a direct summand the result is exact.
pub fn saturate(s: &Submodule) -> Submodule {
    let ctx = s.ctx();
    let form = smith_form(ctx, s.ambient_rank(), s.rows());
    let gens = form
        .exponents
        .iter()
        .zip(&form.w)
        .filter(|(&d, _)| d < ctx.k())
        .map(|(_, row)| row.clone());
    Submodule::from_generators(ctx, s.ambient_rank(), gens.collect::<Vec<_>>())
}
