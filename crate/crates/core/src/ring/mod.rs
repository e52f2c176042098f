//! Arithmetic in `(Z/p^k)[G]` and the distinguished submodules of the
//! coefficient space: commutator span, twisted spans `[RG]^{1-c}`,
//! augmentation ideals, spans of subsets and the scalars.

mod element;
mod random;

pub use element::{RingElement, RingElementJson, UnitOrderResult};
pub use random::{random_aug_one_unit, random_element, random_in, structured_unit};

pub(crate) use element::group_ring_product;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, QuotientMap, Subgroup};
use crate::linalg::{kernel, p_part_exponent, Matrix, Submodule, ZpkContext};

/// Default cap on the exponent `a` searched by [`RingElement::unit_order`]:
/// the p-part exponent of `|G|` plus 2.
pub fn default_order_cap(group: &FiniteGroup, p: u64) -> u32 {
    p_part_exponent(group.order() as u64, p) + 2
}

/// Builder for the submodules of `(Z/p^k)^{|G|}` attached to a group.
#[derive(Debug, Clone)]
pub struct DistinguishedSubmodules {
    group: Arc<FiniteGroup>,
    ctx: ZpkContext,
}

impl DistinguishedSubmodules {
    pub fn new(group: &Arc<FiniteGroup>, ctx: ZpkContext) -> Self {
        DistinguishedSubmodules {
            group: Arc::clone(group),
            ctx,
        }
    }

    pub fn ctx(&self) -> ZpkContext {
        self.ctx
    }

    fn n(&self) -> usize {
        self.group.order()
    }

    fn basis_diff(&self, a: usize, b: usize) -> Vec<u64> {
        let mut v = vec![0; self.n()];
        v[a] = self.ctx.add(v[a], 1);
        v[b] = self.ctx.sub(v[b], 1);
        v
    }

    /// `[RG, RG]`, spanned by `g^h - g` for `g in G` and `h` a generator.
    pub fn commutator(&self) -> Submodule {
        let g = &self.group;
        let gens = g
            .generators()
            .iter()
            .flat_map(|&h| (0..g.order()).map(move |x| (x, h)))
            .map(|(x, h)| self.basis_diff(g.conj(x, h), x));
        Submodule::from_generators(self.ctx, self.n(), gens.collect::<Vec<_>>())
    }

    /// `[RG, RG]` from all `|G|^2` generators `g^h - g`.
    pub fn commutator_all_generators(&self) -> Submodule {
        let n = self.n();
        let gens = (0..n)
            .flat_map(|x| (0..n).map(move |h| (x, h)))
            .map(|(x, h)| self.basis_diff(self.group.conj(x, h), x));
        Submodule::from_generators(self.ctx, n, gens.collect::<Vec<_>>())
    }

    /// `[RG]^{1-c}`, spanned by `g - g^c`.
    pub fn twisted(&self, c: usize) -> Submodule {
        let gens = (0..self.n()).map(|x| self.basis_diff(x, self.group.conj(x, c)));
        Submodule::from_generators(self.ctx, self.n(), gens.collect::<Vec<_>>())
    }

    /// `I_R(H) G` for normal `H`, `I_R(H)` otherwise.
    pub fn aug_ideal(&self, h: &Subgroup) -> Submodule {
        if self.group.is_normal(h) {
            self.aug_ideal_two_sided(h).expect("normality checked")
        } else {
            let gens = h.members().iter().map(|&x| self.basis_diff(x, 0));
            Submodule::from_generators(self.ctx, self.n(), gens.collect::<Vec<_>>())
        }
    }

    /// `I_R(H) G = span{(h - 1) g}`; requires `H` normal.
    pub fn aug_ideal_two_sided(&self, h: &Subgroup) -> Result<Submodule> {
        if !self.group.is_normal(h) {
            return Err(Error::NotNormal(self.group.name().to_string()));
        }
        let g = &self.group;
        let gens = h
            .members()
            .iter()
            .flat_map(|&x| (0..g.order()).map(move |y| (x, y)))
            .map(|(x, y)| self.basis_diff(g.mul(x, y), y));
        Ok(Submodule::from_generators(
            self.ctx,
            self.n(),
            gens.collect::<Vec<_>>(),
        ))
    }

    /// `R[T]`.
    pub fn span(&self, t: &[usize]) -> Submodule {
        let gens = t.iter().map(|&x| {
            let mut v = vec![0; self.n()];
            v[x] = 1 % self.ctx.modulus();
            v
        });
        Submodule::from_generators(self.ctx, self.n(), gens.collect::<Vec<_>>())
    }

    /// `R * 1`.
    pub fn scalars(&self) -> Submodule {
        self.span(&[0])
    }

    /// `p^j RG`.
    pub fn p_multiple(&self, j: u32) -> Submodule {
        Submodule::scaled_full(self.ctx, self.n(), j)
    }

    /// Kernel of the coefficient collapse `RG -> R[G/K]`.
    pub fn collapse_kernel(&self, q: &QuotientMap) -> Submodule {
        let m = q.quotient.order();
        let mut a = Matrix::zeros(self.ctx, m, self.n());
        for g in 0..self.n() {
            a.set(q.project(g), g, 1 % self.ctx.modulus());
        }
        kernel(&a)
    }

    /// `C_RG(S)` as the solution space of `x - s^-1 x s = 0` for `s in S`.
    pub fn centralizer_of(&self, s: &[usize]) -> Submodule {
        let n = self.n();
        let mut a = Matrix::zeros(self.ctx, s.len() * n, n);
        for (block, &x) in s.iter().enumerate() {
            for g in 0..n {
                // coefficient of g in s^-1 y s is y at s g s^-1
                let r = block * n + g;
                let src = self.group.conj(g, self.group.inv(x));
                a.set(r, g, self.ctx.add(a.get(r, g), 1));
                a.set(r, src, self.ctx.sub(a.get(r, src), 1));
            }
        }
        kernel(&a)
    }

    /// Span of the `N`-class sums.
    pub fn class_sum_span(&self, n: &Subgroup) -> Result<Submodule> {
        let orbits = self.group.n_class_partition(n)?;
        let gens = orbits
            .iter()
            .map(|o| RingElement::set_sum(&self.group, self.ctx, o).into_coeffs());
        Ok(Submodule::from_generators(
            self.ctx,
            self.n(),
            gens.collect::<Vec<_>>(),
        ))
    }
}

/// The `N`-class sum of `g`.
pub fn n_class_sum(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    g: usize,
    ctx: ZpkContext,
) -> Result<RingElement> {
    let orbit = group.n_class_orbit(n, g)?;
    Ok(RingElement::set_sum(group, ctx, &orbit))
}

/// Image of `x` in `R[G/K]`.
pub fn collapse(x: &RingElement, q: &QuotientMap) -> Vec<u64> {
    let ctx = x.ctx();
    let mut out = vec![0; q.quotient.order()];
    for (g, &c) in x.coeffs().iter().enumerate() {
        let t = q.project(g);
        out[t] = ctx.add(out[t], c);
    }
    out
}
