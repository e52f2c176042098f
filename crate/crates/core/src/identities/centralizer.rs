use std::sync::Arc;

use super::{build_target, CheckResult, Claim, Counterexample, TargetPart};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{Submodule, ZpkContext};
use crate::ring::{DistinguishedSubmodules, RingElement};

fn require_self_centralizing(group: &FiniteGroup, n: &Subgroup, p: u64) -> Result<()> {
    if !group.is_normal(n) {
        return Err(Error::NotNormal(group.name().to_string()));
    }
    if !group.is_p_group(n, p) {
        return Err(Error::HypothesisViolated(format!("N is not a {p}-group")));
    }
    if !group.centralizer(n.members()).is_subset_of(n) {
        return Err(Error::HypothesisViolated(
            "C_G(N) is not contained in N".into(),
        ));
    }
    Ok(())
}

fn class_sum_memberships(
    name: &str,
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    ctx: ZpkContext,
    target: Vec<TargetPart>,
) -> Result<CheckResult> {
    let subs = DistinguishedSubmodules::new(group, ctx);
    let module = build_target(group, &subs, &target);
    let orbits = group.n_class_partition(n)?;
    for orbit in &orbits {
        let sum = RingElement::set_sum(group, ctx, orbit);
        if !module.contains(sum.coeffs())? {
            let cx = Counterexample {
                group: group.name().to_string(),
                p: ctx.p(),
                k: ctx.k(),
                claim: Claim::Outside {
                    element: sum.into_coeffs(),
                    target,
                },
            };
            return Ok(CheckResult::fail(name, orbits.len() as u64, 0, cx));
        }
    }
    Ok(CheckResult::pass(name, orbits.len() as u64, 0))
}

/// Every `N`-class sum lies in `R + I_R(N)G + pRG`.
pub fn check_sbor_a(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    ctx: ZpkContext,
) -> Result<CheckResult> {
    require_self_centralizing(group, n, ctx.p())?;
    let target = vec![
        TargetPart::Scalars,
        TargetPart::AugIdeal {
            members: n.members().to_vec(),
        },
        TargetPart::Full { scale: 1 },
    ];
    class_sum_memberships("sbor-a", group, n, ctx, target)
}

/// One preimage (the least coset element) of every involution of `G/F`.
pub fn involution_lifts(group: &FiniteGroup, f: &Subgroup) -> Result<Vec<usize>> {
    let q = group.quotient_by(f)?;
    Ok(q.quotient
        .special_sets(2)
        .involutions
        .iter()
        .map(|&t| q.representatives[t])
        .collect())
}

/// For `p = 2`: every `O_2(G)`-class sum lies in
/// `R + I_R(O_2(G))G + 4RG + 2R[T]`.
pub fn check_sbor_b(group: &Arc<FiniteGroup>, ctx: ZpkContext) -> Result<CheckResult> {
    if ctx.p() != 2 {
        return Err(Error::HypothesisViolated("requires p = 2".into()));
    }
    let f = group.o_p(2);
    require_self_centralizing(group, &f, 2)?;
    let t = involution_lifts(group, &f)?;
    let target = vec![
        TargetPart::Scalars,
        TargetPart::AugIdeal {
            members: f.members().to_vec(),
        },
        TargetPart::Full { scale: 2 },
        TargetPart::Span { set: t, scale: 1 },
    ];
    class_sum_memberships("sbor-b", group, &f, ctx, target)
}

/// Over `F_p`: each `N`-class sum `x` has `x - ε(x)` in `I(N)G` and
/// nilpotent, and the ideal `C_{F_pG}(N) ∩ I(N)G` is nilpotent, so the
/// centralizer is scalars plus a nilpotent ideal.
pub fn check_centralizer_local(
    group: &Arc<FiniteGroup>,
    n: &Subgroup,
    p: u64,
) -> Result<CheckResult> {
    const NAME: &str = "centralizer-local";
    require_self_centralizing(group, n, p)?;
    let ctx = ZpkContext::new(p, 1)?;
    let dim = group.order();
    let subs = DistinguishedSubmodules::new(group, ctx);
    let ideal = subs.aug_ideal(n);
    let orbits = group.n_class_partition(n)?;
    let mut nus = Vec::new();
    let fail = |claim| {
        let cx = Counterexample {
            group: group.name().to_string(),
            p,
            k: 1,
            claim,
        };
        Ok(CheckResult::fail(NAME, orbits.len() as u64, 0, cx))
    };
    for orbit in &orbits {
        let x = RingElement::set_sum(group, ctx, orbit);
        let nu = &x - &RingElement::scalar(group, ctx, x.augmentation());
        if !ideal.contains(nu.coeffs())? {
            return fail(Claim::Outside {
                element: nu.into_coeffs(),
                target: vec![TargetPart::AugIdeal {
                    members: n.members().to_vec(),
                }],
            });
        }
        let mut power = nu.clone();
        let mut exponent = 1u64;
        while !power.is_zero() && exponent < dim as u64 {
            power = &power * &power;
            exponent *= 2;
        }
        if !power.is_zero() {
            return fail(Claim::NotNilpotent {
                element: nu.into_coeffs(),
                power: exponent,
            });
        }
        nus.push(nu);
    }
    // powers of the ideal J spanned by the nilpotent parts
    let basis = Submodule::from_generators(ctx, dim, nus.iter().map(|x| x.coeffs().to_vec()));
    let j_elems: Vec<RingElement> = basis
        .rows()
        .iter()
        .map(|r| RingElement::from_coeffs(group, ctx, r.clone()))
        .collect::<Result<_>>()?;
    let mut current = basis.clone();
    let mut steps = 1;
    while !current.is_zero() && steps <= dim {
        let gens: Vec<Vec<u64>> = current
            .rows()
            .iter()
            .flat_map(|r| {
                let a = RingElement::from_coeffs(group, ctx, r.clone()).expect("row length");
                j_elems
                    .iter()
                    .map(move |b| (&a * b).into_coeffs())
                    .collect::<Vec<_>>()
            })
            .collect();
        current = Submodule::from_generators(ctx, dim, gens);
        steps += 1;
    }
    if !current.is_zero() {
        let witness = current.rows()[0].clone();
        return fail(Claim::NotNilpotent {
            element: witness,
            power: dim as u64,
        });
    }
    Ok(CheckResult::pass(NAME, orbits.len() as u64, 0)
        .with_note(format!("nilpotency index of the radical part: {steps}")))
}
