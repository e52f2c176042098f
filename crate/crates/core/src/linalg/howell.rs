//! Howell normal form over `Z/p^k`.
//!
//! `Z/p^k` is a chain ring, so every column gets at most one pivot and the
//! pivot can be normalized to a pure power `p^j`. The Howell property (the
//! rows with pivot column `>= c` span every element of the module whose first
//! `c` entries vanish) is obtained by feeding `p^(k-j) * row` back into the
//! pending set after each pivot. Entries above a pivot `p^j` are reduced into
//! `[0, p^j)`. With these conventions the form is unique, so two submodules
//! are equal iff their row lists are identical.

use super::matrix::{scale, sub_scaled};
use super::{Matrix, ZpkContext};
use crate::error::{Error, Result};

/// A submodule of `(Z/p^k)^n`, held in Howell normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ctx: ZpkContext,
    ambient_rank: usize,
    rows: Vec<Vec<u64>>,
    /// `(pivot column, pivot valuation)` per row.
    pivots: Vec<(usize, u32)>,
}

pub fn howell_form(m: &Matrix) -> Submodule {
    Submodule::from_generators(m.ctx(), m.cols(), m.row_vecs())
}

impl Submodule {
    pub fn zero(ctx: ZpkContext, n: usize) -> Self {
        Submodule {
            ctx,
            ambient_rank: n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ctx: ZpkContext, n: usize) -> Self {
        Self::scaled_full(ctx, n, 0)
    }

    /// `p^j (Z/p^k)^n`.
    pub fn scaled_full(ctx: ZpkContext, n: usize, j: u32) -> Self {
        let pj = ctx.p_pow(j);
        Self::from_generators(
            ctx,
            n,
            (0..n).map(|i| {
                let mut v = vec![0; n];
                v[i] = pj;
                v
            }),
        )
    }

    /// Howell form of the span of `gens`. Entries are reduced mod p^k.
    ///
    /// Panics if a generator does not have length `n`.
    pub fn from_generators<I>(ctx: ZpkContext, n: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut pending: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|mut g| {
                assert_eq!(g.len(), n, "generator length must match ambient rank");
                g.iter_mut().for_each(|x| *x = ctx.reduce(*x));
                g
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..n {
            let best = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| ctx.valuation(r[col]))
                .map(|(i, _)| i);
            let Some(best) = best else { continue };
            let mut row = pending.swap_remove(best);
            let (j, unit) = ctx.split(row[col]);
            let unit_inv = ctx.inverse(unit).expect("unit part is invertible");
            scale(&ctx, &mut row, unit_inv);
            let pj = ctx.p_pow(j);
            for other in pending.iter_mut() {
                if other[col] != 0 {
                    let q = other[col] / pj;
                    sub_scaled(&ctx, other, q, &row);
                }
            }
            let mut annihilated = row.clone();
            scale(&ctx, &mut annihilated, ctx.p_pow(ctx.k() - j));
            pending.push(annihilated);
            pending.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(row);
            pivots.push((col, j));
        }
        for i in 0..rows.len() {
            let (c, j) = pivots[i];
            let pj = ctx.p_pow(j);
            let (above, below) = rows.split_at_mut(i);
            let pivot_row = &below[0];
            for r in above.iter_mut() {
                let q = r[c] / pj;
                sub_scaled(&ctx, r, q, pivot_row);
            }
        }
        Submodule {
            ctx,
            ambient_rank: n,
            rows,
            pivots,
        }
    }

    pub fn ctx(&self) -> ZpkContext {
        self.ctx
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Howell basis rows.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ctx, self.ambient_rank, &self.rows).expect("rows have ambient rank")
    }

    /// `log_p` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.pivots.iter().map(|&(_, j)| self.ctx.k() - j).sum()
    }

    fn check_dim(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Coordinates of `v` with respect to the Howell rows, if `v` lies in
    /// the span.
    pub fn coordinates(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        self.check_dim(v)?;
        let ctx = self.ctx;
        let mut rest: Vec<u64> = v.iter().map(|&x| ctx.reduce(x)).collect();
        let mut coords = vec![0; self.rows.len()];
        let mut next_col = 0;
        for (i, &(c, j)) in self.pivots.iter().enumerate() {
            if rest[next_col..c].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            let pj = ctx.p_pow(j);
            if !rest[c].is_multiple_of(pj) {
                return Ok(None);
            }
            let q = rest[c] / pj;
            sub_scaled(&ctx, &mut rest, q, &self.rows[i]);
            coords[i] = q;
            next_col = c + 1;
        }
        if rest.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Combines Howell rows with the given coordinates.
    pub fn combine(&self, coords: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.ambient_rank];
        for (row, &q) in self.rows.iter().zip(coords) {
            sub_scaled(&self.ctx, &mut out, self.ctx.neg(self.ctx.reduce(q)), row);
        }
        out
    }

    pub fn contains_module(&self, other: &Submodule) -> bool {
        other.rows.iter().all(|r| self.contains(r).unwrap_or(false))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                got: other.ambient_rank,
            });
        }
        Ok(Self::from_generators(
            self.ctx,
            self.ambient_rank,
            self.rows.iter().chain(&other.rows).cloned(),
        ))
    }

    /// `p^j S`.
    pub fn scale_by_p_power(&self, j: u32) -> Submodule {
        let pj = self.ctx.p_pow(j);
        Self::from_generators(
            self.ctx,
            self.ambient_rank,
            self.rows.iter().map(|r| {
                let mut r = r.clone();
                scale(&self.ctx, &mut r, pj);
                r
            }),
        )
    }

    /// `S ∩ T` via the Howell form of `[[S, S], [T, 0]]`: rows whose left
    /// half vanishes carry the intersection in their right half.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = self.ambient_rank;
        if n != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: other.ambient_rank,
            });
        }
        let gens = self
            .rows
            .iter()
            .map(|r| [r.as_slice(), r.as_slice()].concat())
            .chain(
                other
                    .rows
                    .iter()
                    .map(|r| [r.as_slice(), &vec![0; n]].concat()),
            );
        let big = Self::from_generators(self.ctx, 2 * n, gens);
        Ok(big.tail_block(n))
    }

    /// Elements supported on the coordinate set `support`, i.e. `S ∩ R[X]`.
    pub fn restrict_to_coordinates(&self, support: &[usize]) -> Submodule {
        let n = self.ambient_rank;
        let mut inside = vec![false; n];
        for &i in support {
            inside[i] = true;
        }
        // outside coordinates first, then the support
        let order: Vec<usize> = (0..n)
            .filter(|&i| !inside[i])
            .chain((0..n).filter(|&i| inside[i]))
            .collect();
        let outside = n - order.iter().filter(|&&i| inside[i]).count();
        let permuted = Self::from_generators(
            self.ctx,
            n,
            self.rows
                .iter()
                .map(|r| order.iter().map(|&i| r[i]).collect()),
        );
        let mut kept = Vec::new();
        for (row, &(c, _)) in permuted.rows.iter().zip(&permuted.pivots) {
            if c >= outside {
                let mut v = vec![0; n];
                for (pos, &i) in order.iter().enumerate() {
                    v[i] = row[pos];
                }
                kept.push(v);
            }
        }
        Self::from_generators(self.ctx, n, kept)
    }

    /// Rows with pivot at or beyond `split`, truncated to their trailing
    /// `ambient_rank - split` entries.
    pub(crate) fn tail_block(&self, split: usize) -> Submodule {
        let tails = self
            .rows
            .iter()
            .zip(&self.pivots)
            .filter(|(_, &(c, _))| c >= split)
            .map(|(r, _)| r[split..].to_vec());
        Self::from_generators(self.ctx, self.ambient_rank - split, tails)
    }

    /// Image of the submodule in `(Z/p^k')^n` for `k' <= k`.
    pub fn reduce_precision(&self, k: u32) -> Result<Submodule> {
        if k > self.ctx.k() {
            return Err(Error::Input("cannot raise precision by reduction".into()));
        }
        let ctx = self.ctx.with_precision(k)?;
        Ok(Self::from_generators(
            ctx,
            self.ambient_rank,
            self.rows.iter().cloned(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, k: u32) -> ZpkContext {
        ZpkContext::new(p, k).unwrap()
    }

    #[test]
    fn zero_matrix_has_empty_basis() {
        let m = Matrix::zeros(ctx(2, 3), 3, 2);
        assert!(howell_form(&m).is_zero());
    }

    #[test]
    fn two_generates_even_residues_mod_four() {
        let s = Submodule::from_generators(ctx(2, 2), 1, vec![vec![2]]);
        assert_eq!(s.rows(), &[vec![2]]);
        assert!(s.contains(&[2]).unwrap());
        assert!(!s.contains(&[1]).unwrap());
    }

    #[test]
    fn mod_eight_example_has_span_size_eight() {
        let s = Submodule::from_generators(ctx(2, 3), 2, vec![vec![2, 0], vec![0, 4], vec![2, 4]]);
        assert_eq!(s.rows().len(), 2);
        assert_eq!(s.log_size(), 3);
    }

    #[test]
    fn howell_property_needs_annihilator_row() {
        // span{(2,1)} mod 8 contains 4*(2,1) = (0,4), which must appear as its own row
        let s = Submodule::from_generators(ctx(2, 3), 2, vec![vec![2, 1]]);
        assert_eq!(s.rows(), &[vec![2, 1], vec![0, 4]]);
        assert!(s.contains(&[0, 4]).unwrap());
        assert!(!s.contains(&[0, 2]).unwrap());
    }

    #[test]
    fn membership_coordinates_mod_nine() {
        let s = Submodule::from_generators(ctx(3, 2), 1, vec![vec![3]]);
        let c = s.coordinates(&[6]).unwrap().unwrap();
        assert_eq!(c, vec![2]);
        assert_eq!(s.combine(&c), vec![6]);
        assert!(s.contains(&[0]).unwrap());
        assert!(matches!(
            s.contains(&[0, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn restrict_and_intersect_agree() {
        let c = ctx(2, 3);
        let s = Submodule::from_generators(c, 3, vec![vec![1, 7, 0], vec![0, 1, 7]]);
        let restricted = s.restrict_to_coordinates(&[0, 2]);
        let coord = Submodule::from_generators(c, 3, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(restricted, s.intersect(&coord).unwrap());
        assert_eq!(
            restricted,
            Submodule::from_generators(c, 3, vec![vec![1, 0, 7]])
        );
    }
}
