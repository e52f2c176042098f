use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_target, first_failure, CheckResult, Claim, Counterexample, TargetPart};
use crate::error::{Error, Result};
use crate::exec::{trial_seed, Exec};
use crate::group::FiniteGroup;
use crate::linalg::ZpkContext;
use crate::ring::{default_order_cap, DistinguishedSubmodules, RingElement};

/// A group element `c` and a unit `u = v0^-1 c v0` with `c^2 = u^2` and
/// `c^-1 u = 1 + 2f`, `f ∈ 2RG + R[T_2] + R`.
#[derive(Debug, Clone)]
pub struct AbcPair {
    pub c: usize,
    pub u: RingElement,
    pub v0: RingElement,
}

/// Builds `u = c^(v0)` with `v0 = 1 + 2 m0`, where `m0` commutes with `c^2`
/// and is, modulo 2, a sum of `<c^2>`-orbits inside `T_2 ∪ C_G(c)`.
///
/// Then `u^2 = c^2`, and modulo 2 the element `f` is `m0 - m0^c`, whose
/// support lies in `T_2` because `C_G(c)` cancels.
pub fn hypothesis_pair<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    c: usize,
    ctx: ZpkContext,
    rng: &mut R,
) -> Result<AbcPair> {
    if ctx.p() != 2 {
        return Err(Error::HypothesisViolated("requires p = 2".into()));
    }
    let c2 = group.mul(c, c);
    let h = group.subgroup_generated(&[c2]);
    let t2 = group.special_sets(2).involutions;
    let cent = group.centralizer(&[c]);
    let mut m0 = RingElement::zero(group, ctx);
    for orbit in group.orbit_partition(&h) {
        let sum = RingElement::set_sum(group, ctx, &orbit);
        let allowed = orbit.iter().all(|&g| t2.contains(&g) || cent.contains(g));
        let mut coeff = 2 * rng.gen_range(0..ctx.modulus() / 2);
        if allowed && rng.gen_bool(0.5) {
            coeff += 1;
        }
        m0 = &m0 + &sum.scale(coeff);
    }
    let one = RingElement::one(group, ctx);
    let v0 = &one + &m0.scale(2);
    let cv = RingElement::group_element(group, ctx, c);
    let u = cv.conjugate(&v0)?;
    Ok(AbcPair { c, u, v0 })
}

fn validate_pair(group: &FiniteGroup, c: usize, u: &RingElement) -> Result<RingElement> {
    let ctx = u.ctx();
    if ctx.p() != 2 {
        return Err(Error::HypothesisViolated("requires p = 2".into()));
    }
    if ctx.k() < 2 {
        return Err(Error::HypothesisViolated(
            "precision must be at least 2".into(),
        ));
    }
    if !group.element_order(c).is_power_of_two() {
        return Err(Error::HypothesisViolated("c is not a 2-element".into()));
    }
    let u_inv = u
        .try_invert()
        .map_err(|_| Error::HypothesisViolated("u is not a unit".into()))?;
    let cv = RingElement::group_element(u.group(), ctx, c);
    if &cv * &cv != u * u {
        return Err(Error::HypothesisViolated("c^2 != u^2".into()));
    }
    match u.unit_order(default_order_cap(group, 2))?.exponent() {
        Some(_) => Ok(u_inv),
        None => Err(Error::HypothesisViolated("u is not a 2-element".into())),
    }
}

/// Checks parts (a)-(c) at precision `k - 1` and the identity
/// `4(f + f^2) u^-1 c = c u^-1 - (c u^-1)^c` at precision `k`.
pub fn check_lemma_abc(group: &Arc<FiniteGroup>, c: usize, u: &RingElement) -> Result<CheckResult> {
    const NAME: &str = "lemma-abc";
    let ctx = u.ctx();
    let u_inv = validate_pair(group, c, u)?;
    let cv = RingElement::group_element(group, ctx, c);
    let c_inv = RingElement::group_element(group, ctx, group.inv(c));
    let one = RingElement::one(group, ctx);
    let w = &c_inv * u;
    let f = (&w - &one)
        .divide_by_p_power(1)
        .map_err(|_| Error::HypothesisViolated("c^-1 u is not in 1 + 2RG".into()))?;

    let fail_at = |k: u32, claim| {
        let cx = Counterexample {
            group: group.name().to_string(),
            p: 2,
            k,
            claim,
        };
        Ok(CheckResult::fail(NAME, 1, 0, cx))
    };

    let lhs = &(&(&(&w * &w) - &one) * &u_inv) * &cv;
    let cu = &cv * &u_inv;
    let rhs = &cu - &cu.conj_by_group_element(c);
    if lhs != rhs {
        return fail_at(
            ctx.k(),
            Claim::AbcIdentity {
                c,
                u: u.coeffs().to_vec(),
                u_inv: u_inv.into_coeffs(),
            },
        );
    }

    let low = f.ctx();
    let subs = DistinguishedSubmodules::new(group, low);
    let checks: Vec<(RingElement, Vec<TargetPart>)> = {
        let twisted = vec![TargetPart::Full { scale: 1 }, TargetPart::Twisted { c }];
        let comm = vec![TargetPart::Full { scale: 1 }, TargetPart::Commutator];
        let comm_odd = vec![
            TargetPart::Full { scale: 1 },
            TargetPart::Commutator,
            TargetPart::Span {
                set: group.special_sets(2).p_prime,
                scale: 0,
            },
        ];
        let mut v = vec![(&f + &(&f * &f), twisted)];
        let mut power = f.clone();
        for _ in 0..default_order_cap(group, 2) {
            power = &power * &power;
            v.push((&f + &power, comm.clone()));
        }
        v.push((f.clone(), comm_odd));
        v
    };
    for (x, target) in checks {
        let module = build_target(group, &subs, &target);
        if !module.contains(x.coeffs())? {
            return fail_at(
                low.k(),
                Claim::Outside {
                    element: x.into_coeffs(),
                    target,
                },
            );
        }
    }
    Ok(CheckResult::pass(NAME, 1, 0))
}

/// Runs [`check_lemma_abc`] on `trials` constructed pairs with `c` drawn
/// from the 2-elements of `G`.
pub fn check_lemma_abc_constructed(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "lemma-abc";
    if ctx.p() != 2 {
        return Err(Error::HypothesisViolated("requires p = 2".into()));
    }
    let two_elements = group.p_elements(2);
    let outcomes = exec.map(trials as usize, |t| -> Result<Option<Counterexample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let c = *two_elements
            .choose(&mut rng)
            .expect("identity is a 2-element");
        let pair = hypothesis_pair(group, c, ctx, &mut rng)?;
        Ok(check_lemma_abc(group, c, &pair.u)?.counterexample)
    });
    let outcomes: Vec<Option<Counterexample>> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(match first_failure(outcomes) {
        Some(cx) => CheckResult::fail(NAME, trials, seed, cx),
        None => CheckResult::pass(NAME, trials, seed),
    })
}
