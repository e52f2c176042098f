use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{solve, Matrix, ZpkContext};
use crate::ring::{default_order_cap, group_ring_product, random_aug_one_unit, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionUnitKind {
    GroupElement,
    ConjugatedElement,
    ConjugatedSubgroupGenerator,
}

/// A unit built as `conjugator^-1 * base * conjugator`; its order is the
/// order of `base` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionUnitSpec {
    pub kind: TorsionUnitKind,
    pub base: usize,
    pub conjugator: RingElement,
    pub realized: RingElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftVerdict {
    Genuine,
    Spurious,
}

impl TorsionUnitSpec {
    pub fn new(kind: TorsionUnitKind, base: usize, conjugator: &RingElement) -> Result<Self> {
        let b = RingElement::group_element(conjugator.group(), conjugator.ctx(), base);
        Ok(TorsionUnitSpec {
            kind,
            base,
            conjugator: conjugator.clone(),
            realized: b.conjugate(conjugator)?,
        })
    }

    /// Recomputes the unit from its construction at precision `k + delta`
    /// and compares the torsion order with that of `base`.
    pub fn lift_check(&self, delta: u32) -> Result<LiftVerdict> {
        if self.kind == TorsionUnitKind::GroupElement {
            return Ok(LiftVerdict::Genuine);
        }
        let group = self.realized.group();
        let k = self.realized.ctx().k();
        let v = self.conjugator.lift_to(k + delta)?;
        let b = RingElement::group_element(group, v.ctx(), self.base);
        let lifted = b.conjugate(&v)?;
        let p = v.ctx().p();
        let order = lifted.unit_order(default_order_cap(group, p))?;
        let expected = group.element_order(self.base) as u64;
        let same_order = match order {
            crate::ring::UnitOrderResult::Order { order, .. } => order == expected,
            _ => false,
        };
        Ok(if same_order && lifted.reduce_to(k)? == self.realized {
            LiftVerdict::Genuine
        } else {
            LiftVerdict::Spurious
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionStyle {
    /// Conjugate a Sylow subgroup by an arbitrary unit.
    ConjugateSylowPart,
    /// Conjugate by a unit centralizing `N`, so `N <= Q` and `Q` normalizes `N`.
    ConjugateByCentralizingUnit,
}

/// `Q = v^-1 H v` with `H` a Sylow p-subgroup containing `N`.
#[derive(Debug, Clone)]
pub struct TorsionSubgroup {
    pub h: Subgroup,
    pub n: Subgroup,
    pub conjugator: RingElement,
    /// Generators of `H`, those of `N` first.
    pub base_generators: Vec<usize>,
    pub generators: Vec<TorsionUnitSpec>,
}

/// Random unit of augmentation 1 in the span of the `N`-class sums.
pub fn centralizing_unit<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    ctx: ZpkContext,
    rng: &mut R,
) -> Result<RingElement> {
    let orbits = group.n_class_partition(n)?;
    loop {
        let mut coeffs = vec![0u64; group.order()];
        let mut aug = 0;
        for orbit in &orbits[1..] {
            let c = rng.gen_range(0..ctx.modulus());
            for &g in orbit {
                coeffs[g] = c;
            }
            aug = ctx.add(aug, ctx.mul(c, orbit.len() as u64));
        }
        coeffs[0] = ctx.sub(1, aug);
        let v = RingElement::from_coeffs(group, ctx, coeffs)?;
        if v.is_unit() {
            return Ok(v);
        }
    }
}

fn require_admissible_n(group: &FiniteGroup, n: &Subgroup, p: u64) -> Result<()> {
    if !group.is_normal(n) || !group.is_p_group(n, p) {
        return Err(Error::HypothesisViolated(
            "N must be a normal p-subgroup".into(),
        ));
    }
    if !group.centralizer(n.members()).is_subset_of(n) {
        return Err(Error::HypothesisViolated(
            "C_G(N) is not contained in N".into(),
        ));
    }
    Ok(())
}

pub fn build_torsion_subgroup<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    style: TorsionStyle,
    ctx: ZpkContext,
    rng: &mut R,
) -> Result<TorsionSubgroup> {
    require_admissible_n(group, n, ctx.p())?;
    let h = group.sylow(ctx.p());
    let mut base_generators = n.generators(group);
    for &x in h.members() {
        if group.closure(&base_generators).len() == h.order() {
            break;
        }
        if !group.closure(&base_generators).contains(&x) {
            base_generators.push(x);
        }
    }
    let v = match style {
        TorsionStyle::ConjugateSylowPart => random_aug_one_unit(group, ctx, rng),
        TorsionStyle::ConjugateByCentralizingUnit => centralizing_unit(group, n, ctx, rng)?,
    };
    let kind = if v.is_one() {
        TorsionUnitKind::GroupElement
    } else {
        TorsionUnitKind::ConjugatedSubgroupGenerator
    };
    let generators = base_generators
        .iter()
        .map(|&b| TorsionUnitSpec::new(kind, b, &v))
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsionSubgroup {
        h,
        n: n.clone(),
        conjugator: v,
        base_generators,
        generators,
    })
}

/// Hensel test for a unit `u` of augmentation 1 known modulo `p^k0`, with
/// `u^(p^a) = 1` mod `p^k0`: is there a correction `u' = u + p^k0 y`, `y` in
/// the span of `space`, with `ε(u') = 1` and `u'^(p^a) = 1` mod `p^(k0+Δ)`?
/// The coefficients of `u` may be any lift to precision `k0 + Δ`.
///
/// For `Δ <= k0` the condition is linear in `y` modulo `p^Δ`:
/// `(u^m - 1)/p^k0 + sum_i u^i y u^(m-1-i) = 0` with `m = p^a`.
/// Returns `None` when `u` has no p-power order below the cap.
pub(crate) fn lift_solve(
    group: &FiniteGroup,
    p: u64,
    k0: u32,
    delta: u32,
    u: &[u64],
    space: &[Vec<u64>],
) -> Result<Option<LiftVerdict>> {
    if delta == 0 || delta > k0 {
        return Err(Error::Input(
            "lift precision must satisfy 1 <= delta <= k0".into(),
        ));
    }
    let hi = ZpkContext::new(p, k0 + delta)?;
    let pk0 = hi.p_pow(k0);
    let n = group.order();
    let cap = default_order_cap(group, p);
    let mul = |a: &[u64], b: &[u64], ctx: &ZpkContext| {
        let mut out = vec![0; n];
        group_ring_product(group, ctx, a, b, &mut out);
        out
    };
    let is_one_mod = |x: &[u64], m: u64| x[0] % m == 1 % m && x[1..].iter().all(|&c| c % m == 0);
    let ppow = |x: &[u64], ctx: &ZpkContext| {
        let mut acc = x.to_vec();
        for _ in 1..p {
            acc = mul(&acc, x, ctx);
        }
        acc
    };
    let u_hi: Vec<u64> = u.iter().map(|&c| hi.reduce(c)).collect();
    let mut chain = vec![u_hi.clone()];
    while !is_one_mod(chain.last().expect("nonempty"), pk0) {
        if chain.len() > cap as usize {
            return Ok(None);
        }
        let next = ppow(chain.last().expect("nonempty"), &hi);
        chain.push(next);
    }
    let a = chain.len() - 1;
    let top = &chain[a];
    let aug_ok = u_hi.iter().fold(0, |s, &c| hi.add(s, c)) == 1;
    if is_one_mod(top, hi.modulus()) && aug_ok {
        return Ok(Some(LiftVerdict::Genuine));
    }
    if a >= 1 && is_one_mod(&chain[a - 1], p) && !is_one_mod(top, pk0 * p) {
        return Ok(Some(LiftVerdict::Spurious));
    }
    let d = ZpkContext::new(p, delta)?;
    let z: Vec<u64> = top
        .iter()
        .enumerate()
        .map(|(i, &c)| d.reduce(hi.sub(c, if i == 0 { 1 } else { 0 }) / pk0))
        .collect();
    let t = d.reduce(hi.sub(u_hi.iter().fold(0, |s, &c| hi.add(s, c)), 1) / pk0);
    let u_d: Vec<u64> = u_hi.iter().map(|&c| d.reduce(c)).collect();
    let mut a_mat = Matrix::zeros(d, n + 1, space.len());
    for (j, y) in space.iter().enumerate() {
        let mut tm: Vec<u64> = y.iter().map(|&c| d.reduce(c)).collect();
        let mut s = u_d.clone();
        for _ in 0..a {
            // T_{pm} = sum_j s^j T_m s^(p-1-j), s = u^m
            let mut powers = vec![{
                let mut one = vec![0; n];
                one[0] = 1 % d.modulus();
                one
            }];
            for i in 1..p as usize {
                powers.push(mul(&powers[i - 1], &s, &d));
            }
            let mut next = vec![0; n];
            for jj in 0..p as usize {
                let term = mul(&mul(&powers[jj], &tm, &d), &powers[p as usize - 1 - jj], &d);
                for (x, y) in next.iter_mut().zip(term) {
                    *x = d.add(*x, y);
                }
            }
            tm = next;
            s = mul(&powers[p as usize - 1], &s, &d);
        }
        for (i, &v) in tm.iter().enumerate() {
            a_mat.set(i, j, v);
        }
        a_mat.set(n, j, y.iter().fold(0, |acc, &c| d.add(acc, d.reduce(c))));
    }
    let mut rhs: Vec<u64> = z.iter().map(|&c| d.neg(c)).collect();
    rhs.push(d.neg(t));
    Ok(Some(match solve(&a_mat, &rhs) {
        Ok(_) => LiftVerdict::Genuine,
        Err(Error::NoSolution) => LiftVerdict::Spurious,
        Err(e) => return Err(e),
    }))
}

/// Hensel test of a raw unit with corrections ranging over all of `RG`.
pub fn lift_check_raw(u: &RingElement, delta: u32) -> Result<LiftVerdict> {
    let group = u.group();
    let n = group.order();
    let space: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    lift_solve(group, u.ctx().p(), u.ctx().k(), delta, u.coeffs(), &space)?
        .ok_or_else(|| Error::HypothesisViolated("u has no p-power order within the cap".into()))
}
