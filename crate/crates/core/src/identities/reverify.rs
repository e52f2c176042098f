//! Independent confirmation of counterexamples: products by direct loops
//! over the multiplication table, targets as explicit generator lists, and
//! membership through the Smith form.

use super::{Claim, Counterexample, TargetPart};
use crate::conjugacy::{lift_solve, LiftVerdict};
use crate::group::FiniteGroup;
use crate::linalg::{smith_form, ZpkContext};
use crate::ring::default_order_cap;

fn product(g: &FiniteGroup, ctx: &ZpkContext, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; g.order()];
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            let t = g.mul(x, y);
            out[t] = ctx.add(out[t], ctx.mul(ax, by));
        }
    }
    out
}

fn power(g: &FiniteGroup, ctx: &ZpkContext, a: &[u64], e: u64) -> Vec<u64> {
    let mut acc = vec![0; g.order()];
    acc[0] = 1 % ctx.modulus();
    for _ in 0..e {
        acc = product(g, ctx, &acc, a);
    }
    acc
}

fn unit(g: &FiniteGroup, ctx: &ZpkContext, x: usize) -> Vec<u64> {
    let mut v = vec![0; g.order()];
    v[x] = 1 % ctx.modulus();
    v
}

fn diff(g: &FiniteGroup, ctx: &ZpkContext, a: usize, b: usize) -> Vec<u64> {
    let mut v = unit(g, ctx, a);
    v[b] = ctx.sub(v[b], 1);
    v
}

fn generators(g: &FiniteGroup, ctx: &ZpkContext, part: &TargetPart) -> Vec<Vec<u64>> {
    let n = g.order();
    let all = 0..n;
    match part {
        TargetPart::Scalars => vec![unit(g, ctx, 0)],
        TargetPart::Full { scale } => all
            .map(|x| {
                unit(g, ctx, x)
                    .iter()
                    .map(|&c| ctx.mul(c, ctx.p_pow(*scale)))
                    .collect()
            })
            .collect(),
        TargetPart::AugIdeal { members } => members
            .iter()
            .flat_map(|&h| (0..n).map(move |x| (h, x)))
            .map(|(h, x)| diff(g, ctx, g.mul(h, x), x))
            .collect(),
        TargetPart::Commutator => all
            .flat_map(|x| (0..n).map(move |h| (x, h)))
            .map(|(x, h)| diff(g, ctx, g.conj(x, h), x))
            .collect(),
        TargetPart::Twisted { c } => all.map(|x| diff(g, ctx, x, g.conj(x, *c))).collect(),
        TargetPart::Span { set, scale } => set
            .iter()
            .map(|&t| {
                unit(g, ctx, t)
                    .iter()
                    .map(|&c| ctx.mul(c, ctx.p_pow(*scale)))
                    .collect()
            })
            .collect(),
        TargetPart::SpanCapCommutator { set } => {
            // [RG,RG] is the kernel of summing over conjugacy classes
            let mut out = Vec::new();
            for &s in set {
                let class_mate = set
                    .iter()
                    .copied()
                    .filter(|&t| (0..n).any(|h| g.conj(t, h) == s))
                    .min()
                    .expect("s is its own conjugate");
                if class_mate != s {
                    out.push(diff(g, ctx, s, class_mate));
                }
            }
            out
        }
    }
}

fn member(g: &FiniteGroup, ctx: ZpkContext, v: &[u64], target: &[TargetPart]) -> bool {
    let gens: Vec<Vec<u64>> = target.iter().flat_map(|t| generators(g, &ctx, t)).collect();
    smith_form(ctx, g.order(), &gens).contains(v)
}

/// True when the counterexample's claim holds, i.e. the failure is real.
pub fn reverify(g: &FiniteGroup, cx: &Counterexample) -> bool {
    if cx.group != g.name() {
        return false;
    }
    let Ok(ctx) = ZpkContext::new(cx.p, cx.k) else {
        return false;
    };
    let reduce = |v: &[u64]| v.iter().map(|&x| ctx.reduce(x)).collect::<Vec<_>>();
    match &cx.claim {
        Claim::Outside { element, target } => !member(g, ctx, &reduce(element), target),
        Claim::PowerOutside {
            terms,
            exponent,
            subtract_powers,
            target,
        } => {
            let mut sum = vec![0; g.order()];
            for t in terms {
                for (s, &x) in sum.iter_mut().zip(t) {
                    *s = ctx.add(*s, x);
                }
            }
            let mut v = power(g, &ctx, &sum, *exponent);
            if *subtract_powers {
                for t in terms {
                    let tp = power(g, &ctx, &reduce(t), *exponent);
                    for (s, x) in v.iter_mut().zip(tp) {
                        *s = ctx.sub(*s, x);
                    }
                }
            }
            !member(g, ctx, &v, target)
        }
        Claim::NotSaturated { element, j, target } => {
            let scaled: Vec<u64> = element.iter().map(|&x| ctx.mul(x, ctx.p_pow(*j))).collect();
            *j < ctx.k()
                && member(g, ctx, &scaled, target)
                && !member(g, ctx, &reduce(element), target)
        }
        Claim::NormMismatch { element, c, extra } => {
            let Ok(high) = ZpkContext::new(cx.p, cx.k + extra) else {
                return false;
            };
            let mut norm = vec![0; g.order()];
            let order = g.element_order(*c);
            for (x, &a) in element.iter().enumerate() {
                let mut y = x;
                for _ in 0..order {
                    norm[y] = high.add(norm[y], high.reduce(a));
                    y = g.conj(y, *c);
                }
            }
            let in_kernel = norm.iter().all(|&x| x == 0);
            let in_twisted = member(g, ctx, &reduce(element), &[TargetPart::Twisted { c: *c }]);
            in_kernel != in_twisted
        }
        Claim::TorsionViolator { u, margin } => {
            let u = reduce(u);
            let one = unit(g, &ctx, 0);
            let minus_one: Vec<u64> = u.iter().zip(&one).map(|(&a, &b)| ctx.sub(a, b)).collect();
            minus_one.iter().all(|&x| x % ctx.p() == 0)
                && power(g, &ctx, &u, ctx.p()) == one
                && minus_one.iter().any(|&x| x % ctx.p_pow(*margin) != 0)
        }
        Claim::AbcIdentity { c, u, u_inv } => {
            let (u, u_inv) = (reduce(u), reduce(u_inv));
            let one = unit(g, &ctx, 0);
            if product(g, &ctx, &u, &u_inv) != one {
                return false;
            }
            let c_vec = unit(g, &ctx, *c);
            let c_inv = unit(g, &ctx, g.inv(*c));
            let w = product(g, &ctx, &c_inv, &u);
            // 4(f + f^2) = (c^-1 u)^2 - 1 exactly
            let mut four_ff = product(g, &ctx, &w, &w);
            four_ff[0] = ctx.sub(four_ff[0], 1);
            let lhs = product(g, &ctx, &product(g, &ctx, &four_ff, &u_inv), &c_vec);
            let cu = product(g, &ctx, &c_vec, &u_inv);
            let cu_c = product(g, &ctx, &product(g, &ctx, &c_inv, &cu), &c_vec);
            let rhs: Vec<u64> = cu.iter().zip(&cu_c).map(|(&a, &b)| ctx.sub(a, b)).collect();
            lhs != rhs
        }
        Claim::NotNilpotent { element, power: e } => {
            *e >= g.order() as u64 && power(g, &ctx, &reduce(element), *e).iter().any(|&x| x != 0)
        }
        Claim::GenuineTorsionOutside {
            u,
            centralized,
            allowed,
            delta,
            central,
        } => {
            let u = reduce(u);
            let aug = u.iter().fold(0, |s, &x| ctx.add(s, x));
            let all: Vec<usize> = (0..g.order()).collect();
            let must_commute = if *central { &all } else { centralized };
            let commutes = must_commute.iter().all(|&x| {
                let xv = unit(g, &ctx, x);
                product(g, &ctx, &xv, &u) == product(g, &ctx, &u, &xv)
            });
            let one = unit(g, &ctx, 0);
            let mut x = u.clone();
            let mut torsion = false;
            for _ in 0..=default_order_cap(g, cx.p) {
                if x == one {
                    torsion = true;
                    break;
                }
                x = power(g, &ctx, &x, cx.p);
            }
            let mut seen = vec![false; g.order()];
            let mut space = Vec::new();
            for y in 0..g.order() {
                if seen[y] {
                    continue;
                }
                let mut v = vec![0; g.order()];
                for &n in centralized {
                    let z = g.conj(y, n);
                    seen[z] = true;
                    v[z] = 1;
                }
                space.push(v);
            }
            let genuine = matches!(
                lift_solve(g, cx.p, cx.k, *delta, &u, &space),
                Ok(Some(LiftVerdict::Genuine))
            );
            aug == 1 % ctx.modulus()
                && commutes
                && torsion
                && genuine
                && allowed.iter().all(|&a| unit(g, &ctx, a) != u)
        }
        Claim::NoFactorization { u, h } => {
            let u = reduce(u);
            // x u = u y identifies y = u^-1 x u inside h
            let mut images = Vec::with_capacity(h.len());
            for &x in h {
                let xu = product(g, &ctx, &unit(g, &ctx, x), &u);
                match h
                    .iter()
                    .find(|&&y| product(g, &ctx, &u, &unit(g, &ctx, y)) == xu)
                {
                    Some(&y) => images.push(y),
                    None => return false,
                }
            }
            let aug_unit = ctx.is_unit(u.iter().fold(0, |s, &x| ctx.add(s, x)));
            aug_unit
                && !(0..g.order()).any(|c| h.iter().zip(&images).all(|(&x, &y)| g.conj(x, c) == y))
        }
        Claim::CollapseMismatch {
            u,
            group_part,
            kernel,
        } => {
            let coset = |x: usize| {
                kernel
                    .iter()
                    .map(|&n| g.mul(n, x))
                    .min()
                    .expect("kernel is nonempty")
            };
            let mut lhs = vec![0u64; g.order()];
            for (x, &a) in u.iter().enumerate() {
                let c = coset(x);
                lhs[c] = (lhs[c] + a) % cx.p;
            }
            let mut rhs = vec![0u64; g.order()];
            rhs[coset(*group_part)] = 1;
            lhs != rhs
        }
    }
}
