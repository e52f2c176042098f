use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_target, first_failure, CheckResult, Claim, Counterexample, TargetPart};
use crate::error::{Error, Result};
use crate::exec::{trial_seed, Exec};
use crate::group::FiniteGroup;
use crate::linalg::ZpkContext;
use crate::ring::{random_element, DistinguishedSubmodules, RingElement};

/// Divisibility margin `ceil((k-1)/2)` forced on `u - 1` when
/// `u ∈ 1 + pRG` and `u^p = 1` modulo `p^k`, `p` odd.
pub fn odd_margin(k: u32) -> u32 {
    k / 2
}

/// Odd `p`: no `u ∈ 1 + pRG` with `u^p = 1` escapes `1 + p^margin RG`.
///
/// Half of the trials draw `u = 1 + p r` uniformly; the other half draw
/// near-torsion `u = 1 + p^j r` with `j` random in `1..k`, which reach
/// `u^p = 1` far more often. Every torsion hit is checked for the margin.
pub fn check_lemma_odd(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "lemma-odd";
    let p = ctx.p();
    if p == 2 {
        return Err(Error::HypothesisViolated("requires odd p".into()));
    }
    let margin = odd_margin(ctx.k());
    let pm = ctx.p_pow(margin);
    let one = RingElement::one(group, ctx);
    let outcomes = exec.map(trials as usize, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let j = if t % 2 == 0 {
            1
        } else {
            rng.gen_range(1..ctx.k())
        };
        let r = random_element(group, ctx, &mut rng).scale(ctx.p_pow(j));
        let u = &one + &r;
        if !u.pow(p).is_one() {
            return (false, None);
        }
        let ok = r.coeffs().iter().all(|&x| x % pm == 0);
        let cx = (!ok).then(|| Counterexample {
            group: group.name().to_string(),
            p,
            k: ctx.k(),
            claim: Claim::TorsionViolator {
                u: u.into_coeffs(),
                margin,
            },
        });
        (true, cx)
    });
    let hits = outcomes.iter().filter(|(hit, _)| *hit).count();
    let note = format!("{hits} torsion hits, margin p^{margin}");
    Ok(
        match first_failure(outcomes.into_iter().map(|(_, cx)| cx).collect()) {
            Some(cx) => CheckResult::fail(NAME, trials, seed, cx),
            None => CheckResult::pass(NAME, trials, seed),
        }
        .with_note(note),
    )
}

/// `p = 2`: for `x = sum r_s (s - 1)` over involutions `s`,
/// `x^2 ∈ 2RG + (R[G \ T_2] ∩ [RG,RG])`.
pub fn check_lemma_l1(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "lemma-l1";
    if ctx.p() != 2 {
        return Err(Error::HypothesisViolated("requires p = 2".into()));
    }
    let t2 = group.special_sets(2).involutions;
    if t2.is_empty() {
        return Ok(CheckResult::pass(NAME, 0, seed).with_note("no involutions"));
    }
    let outside: Vec<usize> = (0..group.order()).filter(|g| !t2.contains(g)).collect();
    let subs = DistinguishedSubmodules::new(group, ctx);
    let target = vec![
        TargetPart::Full { scale: 1 },
        TargetPart::SpanCapCommutator { set: outside },
    ];
    let module = build_target(group, &subs, &target);
    let one = RingElement::one(group, ctx);
    let test = |x: RingElement| -> Result<Option<Counterexample>> {
        if module.contains((&x * &x).coeffs())? {
            return Ok(None);
        }
        Ok(Some(Counterexample {
            group: group.name().to_string(),
            p: 2,
            k: ctx.k(),
            claim: Claim::PowerOutside {
                terms: vec![x.into_coeffs()],
                exponent: 2,
                subtract_powers: false,
                target: target.clone(),
            },
        }))
    };
    let diff = |s: usize| &RingElement::group_element(group, ctx, s) - &one;
    // single involutions and all pairs
    for (i, &s) in t2.iter().enumerate() {
        if let Some(cx) = test(diff(s))? {
            return Ok(CheckResult::fail(NAME, trials, seed, cx));
        }
        for &t in &t2[i + 1..] {
            if let Some(cx) = test(&diff(s) + &diff(t))? {
                return Ok(CheckResult::fail(NAME, trials, seed, cx));
            }
        }
    }
    let outcomes = exec.map(trials as usize, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
        let mut x = RingElement::zero(group, ctx);
        for &s in &t2 {
            x = &x + &diff(s).scale(rng.gen_range(0..ctx.modulus()));
        }
        test(x)
    });
    let outcomes: Vec<Option<Counterexample>> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(match first_failure(outcomes) {
        Some(cx) => CheckResult::fail(NAME, trials, seed, cx),
        None => CheckResult::pass(NAME, trials, seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(name: &str, degree: usize, gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(name, degree, gens, 200).unwrap())
    }

    #[test]
    fn margin_values() {
        assert_eq!(odd_margin(5), 2);
        assert_eq!(odd_margin(4), 2);
        assert_eq!(odd_margin(1), 0);
    }

    #[test]
    fn boundary_torsion_complies() {
        let c3 = perm("C3", 3, &[vec![1, 2, 0]]);
        let ctx = ZpkContext::new(3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let one = RingElement::one(&c3, ctx);
        for _ in 0..20 {
            let x = random_element(&c3, ctx, &mut rng).scale(ctx.p_pow(4));
            let u = &one + &x;
            assert!(u.pow(3).is_one());
        }
        let r = check_lemma_odd(&c3, ctx, 2000, 4, Exec::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn l1_on_s4() {
        let s4 = perm("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        let r =
            check_lemma_l1(&s4, ZpkContext::new(2, 8).unwrap(), 50, 3, Exec::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
