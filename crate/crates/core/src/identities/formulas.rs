use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{build_target, first_failure, CheckResult, Claim, Counterexample, TargetPart};
use crate::error::{Error, Result};
use crate::exec::{trial_seed, Exec};
use crate::group::FiniteGroup;
use crate::linalg::{kernel, p_part_exponent, saturate, smith_form, Matrix, Submodule, ZpkContext};
use crate::ring::{random_element, random_in, DistinguishedSubmodules, RingElement};

fn counterexample(group: &FiniteGroup, ctx: ZpkContext, claim: Claim) -> Counterexample {
    Counterexample {
        group: group.name().to_string(),
        p: ctx.p(),
        k: ctx.k(),
        claim,
    }
}

/// `saturate([RG,RG]) = [RG,RG]`.
pub fn check_formula_11(group: &Arc<FiniteGroup>, ctx: ZpkContext) -> Result<CheckResult> {
    const NAME: &str = "formula-11";
    let comm = DistinguishedSubmodules::new(group, ctx).commutator();
    let sat = saturate(&comm);
    if sat == comm {
        return Ok(CheckResult::pass(NAME, 1, 0));
    }
    // a Smith basis vector of the saturation that escapes the commutator
    let form = smith_form(ctx, group.order(), comm.rows());
    for (&d, w) in form.exponents.iter().zip(&form.w) {
        if d < ctx.k() && !comm.contains(w)? {
            let claim = Claim::NotSaturated {
                element: w.clone(),
                j: d,
                target: vec![TargetPart::Commutator],
            };
            return Ok(CheckResult::fail(
                NAME,
                1,
                0,
                counterexample(group, ctx, claim),
            ));
        }
    }
    Err(Error::Input(
        "saturation differs without a separating Smith vector".into(),
    ))
}

/// Runs `trial` over `0..trials` with per-trial rngs and reports the first
/// failure in index order.
fn randomized<F>(name: &str, trials: u64, seed: u64, exec: Exec, trial: F) -> Result<CheckResult>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Option<Counterexample>> + Sync + Send,
{
    let outcomes = exec.map(trials as usize, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        trial(&mut rng)
    });
    let outcomes: Vec<Option<Counterexample>> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(match first_failure(outcomes) {
        Some(cx) => CheckResult::fail(name, trials, seed, cx),
        None => CheckResult::pass(name, trials, seed),
    })
}

fn power_claim(
    terms: Vec<&RingElement>,
    exponent: u64,
    subtract_powers: bool,
    target: &[TargetPart],
) -> Claim {
    Claim::PowerOutside {
        terms: terms.into_iter().map(|t| t.coeffs().to_vec()).collect(),
        exponent,
        subtract_powers,
        target: target.to_vec(),
    }
}

/// `x^p ∈ pRG + [RG,RG]` for every generator `g^h - g` and for random
/// `x ∈ [RG,RG]`.
pub fn check_formula_12(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "formula-12";
    let subs = DistinguishedSubmodules::new(group, ctx);
    let comm = subs.commutator();
    let target = vec![TargetPart::Full { scale: 1 }, TargetPart::Commutator];
    let module = build_target(group, &subs, &target);
    let p = ctx.p();
    let test = |x: RingElement| -> Result<Option<Counterexample>> {
        if module.contains(x.pow(p).coeffs())? {
            Ok(None)
        } else {
            Ok(Some(counterexample(
                group,
                ctx,
                power_claim(vec![&x], p, false, &target),
            )))
        }
    };
    let n = group.order();
    for g in 0..n {
        for &h in group.generators() {
            let mut x = RingElement::group_element(group, ctx, group.conj(g, h));
            x = &x - &RingElement::group_element(group, ctx, g);
            if let Some(cx) = test(x)? {
                return Ok(CheckResult::fail(NAME, trials, seed, cx));
            }
        }
    }
    randomized(NAME, trials, seed, exec, |rng| {
        let x = RingElement::from_coeffs(group, ctx, random_in(&comm, rng))?;
        test(x)
    })
}

/// `(a_1 + ... + a_l)^(p^n) - sum a_i^(p^n) ∈ pRG + [RG,RG]`.
#[allow(clippy::too_many_arguments)]
pub fn check_formula_13(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    l: usize,
    n: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "formula-13";
    if l == 0 || n == 0 {
        return Err(Error::Input("formula-13 needs l >= 1 and n >= 1".into()));
    }
    let subs = DistinguishedSubmodules::new(group, ctx);
    let target = vec![TargetPart::Full { scale: 1 }, TargetPart::Commutator];
    let module = build_target(group, &subs, &target);
    let e = ctx.p().pow(n);
    randomized(NAME, trials, seed, exec, |rng| {
        let terms: Vec<RingElement> = (0..l).map(|_| random_element(group, ctx, rng)).collect();
        let mut sum = RingElement::zero(group, ctx);
        let mut powers = RingElement::zero(group, ctx);
        for t in &terms {
            sum = &sum + t;
            powers = &powers + &t.pow(e);
        }
        let diff = &sum.pow(e) - &powers;
        if module.contains(diff.coeffs())? {
            Ok(None)
        } else {
            let claim = power_claim(terms.iter().collect(), e, true, &target);
            Ok(Some(counterexample(group, ctx, claim)))
        }
    })
}

/// `x^(p^n) ∈ pRG + [RG,RG] + R[G_p']` with `p^n` the p-part of `|G|`.
pub fn check_formula_14(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "formula-14";
    let subs = DistinguishedSubmodules::new(group, ctx);
    let target = vec![
        TargetPart::Full { scale: 1 },
        TargetPart::Commutator,
        TargetPart::Span {
            set: group.special_sets(ctx.p()).p_prime,
            scale: 0,
        },
    ];
    let module = build_target(group, &subs, &target);
    let e = ctx
        .p()
        .pow(p_part_exponent(group.order() as u64, ctx.p()).max(1));
    let test = |x: RingElement| -> Result<Option<Counterexample>> {
        if module.contains(x.pow(e).coeffs())? {
            Ok(None)
        } else {
            Ok(Some(counterexample(
                group,
                ctx,
                power_claim(vec![&x], e, false, &target),
            )))
        }
    };
    for g in 0..group.order() {
        if let Some(cx) = test(RingElement::group_element(group, ctx, g))? {
            return Ok(CheckResult::fail(NAME, trials, seed, cx));
        }
    }
    randomized(NAME, trials, seed, exec, |rng| {
        test(random_element(group, ctx, rng))
    })
}

/// Kernel of the conjugation norm `x -> sum_i x^(c^i)`, computed with
/// `extra` additional digits and reduced back to precision `k`. The extra
/// digits absorb the torsion `p^(k - v)` that truncation adds on orbits
/// whose stabilizer in `<c>` has p-part `p^v`.
pub fn norm_kernel(
    group: &FiniteGroup,
    c: usize,
    ctx: ZpkContext,
    extra: u32,
) -> Result<Submodule> {
    norm_kernel_high(group, c, ctx, extra)?.reduce_precision(ctx.k())
}

fn norm_kernel_high(
    group: &FiniteGroup,
    c: usize,
    ctx: ZpkContext,
    extra: u32,
) -> Result<Submodule> {
    let high = ctx.with_precision(ctx.k() + extra)?;
    let n = group.order();
    let order = group.element_order(c);
    let mut a = Matrix::zeros(high, n, n);
    for x in 0..n {
        let mut y = x;
        for _ in 0..order {
            a.set(y, x, high.add(a.get(y, x), 1));
            y = group.conj(y, c);
        }
    }
    Ok(kernel(&a))
}

/// `[RG]^{1-c}` equals the kernel of the conjugation norm and its own
/// saturation, and is stable under left and right multiplication by `c`.
pub fn check_formula_2(group: &Arc<FiniteGroup>, c: usize, ctx: ZpkContext) -> Result<CheckResult> {
    const NAME: &str = "formula-2";
    let subs = DistinguishedSubmodules::new(group, ctx);
    let twisted = subs.twisted(c);
    let extra = p_part_exponent(group.element_order(c) as u64, ctx.p());
    let kern = norm_kernel(group, c, ctx, extra)?;
    let fail = |claim| {
        Ok(CheckResult::fail(
            NAME,
            1,
            0,
            counterexample(group, ctx, claim),
        ))
    };
    if kern != twisted {
        let high = norm_kernel_high(group, c, ctx, extra)?;
        let reduce = |r: &Vec<u64>| r.iter().map(|&x| ctx.reduce(x)).collect::<Vec<_>>();
        let witness = high
            .rows()
            .iter()
            .find(|r| !twisted.contains(&reduce(r)).unwrap_or(true))
            .or_else(|| {
                twisted
                    .rows()
                    .iter()
                    .find(|r| !kern.contains(r).unwrap_or(true))
            })
            .cloned()
            .unwrap_or_default();
        return fail(Claim::NormMismatch {
            element: witness,
            c,
            extra,
        });
    }
    let sat = saturate(&twisted);
    if sat != twisted {
        let form = smith_form(ctx, group.order(), twisted.rows());
        for (&d, w) in form.exponents.iter().zip(&form.w) {
            if d < ctx.k() && !twisted.contains(w)? {
                return fail(Claim::NotSaturated {
                    element: w.clone(),
                    j: d,
                    target: vec![TargetPart::Twisted { c }],
                });
            }
        }
    }
    let cv = RingElement::group_element(group, ctx, c);
    for row in twisted.rows() {
        let x = RingElement::from_coeffs(group, ctx, row.clone())?;
        for y in [&cv * &x, &x * &cv] {
            if !twisted.contains(y.coeffs())? {
                return fail(Claim::Outside {
                    element: y.into_coeffs(),
                    target: vec![TargetPart::Twisted { c }],
                });
            }
        }
    }
    Ok(CheckResult::pass(NAME, 1, 0))
}
