use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CampaignReport, LoadedEntry, Skipped};
use crate::conjugacy::{
    build_torsion_subgroup, enumerate_torsion_centralizer, intertwine_all, lift_solve,
    ward_coleman_factor, LiftVerdict, TorsionEnumeration, TorsionStyle, UNIT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::exec::{trial_seed, Exec};
use crate::group::{is_power_of, FiniteGroup, Subgroup};
use crate::identities::{self as id, first_failure, CheckResult, Claim, Counterexample};
use crate::linalg::ZpkContext;
use crate::ring::{collapse, default_order_cap, DistinguishedSubmodules, RingElement};

/// Names accepted by [`run_check`].
pub const CHECKERS: &[&str] = &[
    "sbor-a",
    "sbor-b",
    "formula-11",
    "formula-12",
    "formula-13",
    "formula-14",
    "formula-2",
    "lemma-abc",
    "lemma-l1",
    "lemma-odd",
    "centralizer-local",
    "ward-coleman",
];

/// Constructed pairs for the abc lemma in the identity suite.
pub const ABC_PAIRS: u64 = 50;
/// Minimum random samples for the l1 lemma in the identity suite.
pub const L1_SAMPLES: u64 = 300;
/// Minimum random samples for the odd-prime torsion lemma.
pub const ODD_SAMPLES: u64 = 100_000;

const FORMULA_13_TERMS: usize = 3;
const FORMULA_13_EXPONENT: u32 = 2;
const THEOREM_B_K0: u32 = 2;
const THEOREM_B_DELTA: u32 = 2;

fn skip_reason(name: &str, p: u64) -> Option<&'static str> {
    match name {
        "sbor-b" | "lemma-abc" | "lemma-l1" if p != 2 => Some("requires p = 2"),
        "lemma-odd" if p == 2 => Some("requires odd p"),
        _ => None,
    }
}

/// Runs one named checker on a catalog entry.
pub fn run_check(
    name: &str,
    entry: &LoadedEntry,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    let g = &entry.group;
    if ctx.p() != entry.p() {
        return Err(Error::Input(
            "precision context and entry disagree on p".into(),
        ));
    }
    if let Some(reason) = skip_reason(name, ctx.p()) {
        return Err(Error::Input(format!("{name} {reason}")));
    }
    match name {
        "sbor-a" => id::check_sbor_a(g, &entry.n, ctx),
        "sbor-b" => id::check_sbor_b(g, ctx),
        "formula-11" => id::check_formula_11(g, ctx),
        "formula-12" => id::check_formula_12(g, ctx, trials, seed, exec),
        "formula-13" => id::check_formula_13(
            g,
            ctx,
            FORMULA_13_TERMS,
            FORMULA_13_EXPONENT,
            trials,
            seed,
            exec,
        ),
        "formula-14" => id::check_formula_14(g, ctx, trials, seed, exec),
        "formula-2" => {
            let reps: Vec<usize> = g.conjugacy_classes().iter().map(|c| c[0]).collect();
            for &c in &reps {
                let r = id::check_formula_2(g, c, ctx)?;
                if !r.passed {
                    return Ok(r);
                }
            }
            Ok(CheckResult::pass("formula-2", reps.len() as u64, 0))
        }
        "lemma-abc" => id::check_lemma_abc_constructed(g, ctx, trials, seed, exec),
        "lemma-l1" => id::check_lemma_l1(g, ctx, trials, seed, exec),
        "lemma-odd" => id::check_lemma_odd(g, ctx, trials, seed, exec),
        "centralizer-local" => id::check_centralizer_local(g, &entry.n, ctx.p()),
        "ward-coleman" => check_ward_coleman(entry, ctx, trials, seed, exec),
        other => Err(Error::Input(format!(
            "unknown checker {other}; expected one of {}",
            CHECKERS.join(", ")
        ))),
    }
}

/// One checker wrapped in a report; the entry need not be admissible.
pub fn run_single_check(
    name: &str,
    entry: &LoadedEntry,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CampaignReport> {
    let started = Instant::now();
    let ctx = ZpkContext::new(entry.p(), k)?;
    let mut report = CampaignReport::new(&format!("check:{name}"), entry, k, seed, trials);
    report
        .checks
        .push(run_check(name, entry, ctx, trials, seed, exec)?);
    Ok(report.finish(started))
}

/// Every applicable checker at precision `k`; prime-gated ones are listed
/// as skipped.
pub fn run_identity_suite(
    entry: &LoadedEntry,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CampaignReport> {
    let started = Instant::now();
    entry.require_admissible()?;
    let ctx = ZpkContext::new(entry.p(), k)?;
    let mut report = CampaignReport::new("identity", entry, k, seed, trials);
    for &name in CHECKERS {
        if name == "ward-coleman" {
            continue;
        }
        if let Some(reason) = skip_reason(name, entry.p()) {
            report.skipped.push(Skipped {
                name: name.to_string(),
                reason: reason.to_string(),
            });
            continue;
        }
        let n = match name {
            "lemma-abc" => ABC_PAIRS,
            "lemma-l1" => trials.max(L1_SAMPLES),
            "lemma-odd" => trials.max(ODD_SAMPLES),
            _ => trials,
        };
        report
            .checks
            .push(run_check(name, entry, ctx, n, seed, exec)?);
    }
    Ok(report.finish(started))
}

/// Random unit of augmentation 1 in the span of the `H`-conjugacy orbit
/// sums, i.e. in `C_RG(H)`.
fn orbit_sum_unit<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    ctx: ZpkContext,
    rng: &mut R,
) -> RingElement {
    let orbits = group.orbit_partition(h);
    loop {
        let mut coeffs = vec![0; group.order()];
        let mut aug = 0;
        for orbit in &orbits[1..] {
            let c = rng.gen_range(0..ctx.modulus());
            orbit.iter().for_each(|&g| coeffs[g] = c);
            aug = ctx.add(aug, ctx.mul(c, orbit.len() as u64));
        }
        coeffs[0] = ctx.sub(1, aug);
        let v = RingElement::from_coeffs(group, ctx, coeffs).expect("length matches");
        if v.is_unit() {
            return v;
        }
    }
}

/// Factors `g w` with `g ∈ N_G(H)` random and `w` a random unit centralizing
/// `H`; `H` alternates between `O_p(G)` and a Sylow p-subgroup.
pub fn check_ward_coleman(
    entry: &LoadedEntry,
    ctx: ZpkContext,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CheckResult> {
    const NAME: &str = "ward-coleman";
    let group = &entry.group;
    let sylow = group.sylow(ctx.p());
    let outcomes = exec.map(trials as usize, |t| -> Result<Option<Counterexample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let h = if t % 2 == 0 && entry.n.order() > 1 {
            &entry.n
        } else {
            &sylow
        };
        let normalizer = group.normalizer(h);
        let g = *normalizer.members().choose(&mut rng).expect("nonempty");
        let w0 = orbit_sum_unit(group, h, ctx, &mut rng);
        let u = &RingElement::group_element(group, ctx, g) * &w0;
        match ward_coleman_factor(&u, h) {
            Ok(f) => {
                let centralizer = group.centralizer(h.members());
                if f.verify(h) && centralizer.contains(group.mul(group.inv(g), f.group_part)) {
                    Ok(None)
                } else {
                    Err(Error::Input(
                        "factorization returned without verifying".into(),
                    ))
                }
            }
            Err(Error::FactorizationFailed) => Ok(Some(Counterexample {
                group: group.name().to_string(),
                p: ctx.p(),
                k: ctx.k(),
                claim: Claim::NoFactorization {
                    u: u.into_coeffs(),
                    h: h.members().to_vec(),
                },
            })),
            Err(e) => Err(e),
        }
    });
    let outcomes: Vec<Option<Counterexample>> = outcomes.into_iter().collect::<Result<_>>()?;
    Ok(match first_failure(outcomes) {
        Some(cx) => CheckResult::fail(NAME, trials, seed, cx),
        None => CheckResult::pass(NAME, trials, seed),
    })
}

struct TheoremATrial {
    factorizations: u64,
    wc_failure: Option<Counterexample>,
    l2_failure: Option<Counterexample>,
    certified: bool,
}

fn theorem_a_trial(
    entry: &LoadedEntry,
    ctx: ZpkContext,
    t: usize,
    seed: u64,
) -> Result<TheoremATrial> {
    let group = &entry.group;
    let n = &entry.n;
    let p = ctx.p();
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
    let style = if t.is_multiple_of(2) {
        TorsionStyle::ConjugateByCentralizingUnit
    } else {
        TorsionStyle::ConjugateSylowPart
    };
    let q = build_torsion_subgroup(group, n, style, ctx, &mut rng)?;
    let mut out = TheoremATrial {
        factorizations: 0,
        wc_failure: None,
        l2_failure: None,
        certified: false,
    };
    let cx = |claim| Counterexample {
        group: group.name().to_string(),
        p,
        k: ctx.k(),
        claim,
    };

    let mut tuples: Vec<Vec<usize>> = Vec::new();
    match style {
        TorsionStyle::ConjugateByCentralizingUnit => {
            let quotient = group.quotient_by(n)?;
            let center_n = group.centralizer(n.members());
            let mut choices: Vec<Vec<usize>> = Vec::new();
            for (spec, &b) in q.generators.iter().zip(&q.base_generators) {
                let f = match ward_coleman_factor(&spec.realized, n) {
                    Ok(f) => f,
                    Err(Error::FactorizationFailed) => {
                        out.wc_failure = Some(cx(Claim::NoFactorization {
                            u: spec.realized.coeffs().to_vec(),
                            h: n.members().to_vec(),
                        }));
                        return Ok(out);
                    }
                    Err(e) => return Err(e),
                };
                out.factorizations += 1;
                let image: Vec<u64> = collapse(&spec.realized, &quotient)
                    .iter()
                    .map(|&c| c % p)
                    .collect();
                let mut expected = vec![0; image.len()];
                expected[quotient.project(f.group_part)] = 1;
                if image != expected && out.l2_failure.is_none() {
                    out.l2_failure = Some(cx(Claim::CollapseMismatch {
                        u: spec.realized.coeffs().to_vec(),
                        group_part: f.group_part,
                        kernel: n.members().to_vec(),
                    }));
                }
                choices.push(if n.contains(b) {
                    vec![b]
                } else {
                    center_n
                        .members()
                        .iter()
                        .map(|&z| group.mul(f.group_part, z))
                        .filter(|&x| group.element_order(x) == group.element_order(b))
                        .collect()
                });
            }
            let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
            for c in &choices {
                acc = acc
                    .iter()
                    .flat_map(|prefix| {
                        c.iter().map(move |&x| {
                            let mut v = prefix.clone();
                            v.push(x);
                            v
                        })
                    })
                    .collect();
            }
            tuples = acc;
        }
        TorsionStyle::ConjugateSylowPart => {
            for x in 0..group.order() {
                let tuple: Vec<usize> = q
                    .base_generators
                    .iter()
                    .map(|&h| group.conj(h, x))
                    .collect();
                if !tuples.contains(&tuple) {
                    tuples.push(tuple);
                }
            }
        }
    }

    for tuple in tuples {
        let closure = group.closure(&tuple);
        if !is_power_of(closure.len() as u64, p) {
            continue;
        }
        if style == TorsionStyle::ConjugateByCentralizingUnit
            && !n.members().iter().all(|x| closure.contains(x))
        {
            continue;
        }
        let pairs: Vec<(RingElement, RingElement)> = tuple
            .iter()
            .zip(&q.generators)
            .map(|(&phi, spec)| {
                (
                    RingElement::group_element(group, ctx, phi),
                    spec.realized.clone(),
                )
            })
            .collect();
        match intertwine_all(&pairs, UNIT_SEARCH_BUDGET, &mut rng) {
            Ok(w) => {
                // direct re-verification: phi_i w = w q_i for every generator
                let verified = w.augmentation() == 1
                    && w.is_unit()
                    && pairs
                        .iter()
                        .all(|(a, b)| a.checked_mul(&w).ok() == w.checked_mul(b).ok());
                if verified {
                    out.certified = true;
                    break;
                }
            }
            Err(Error::NoUnitIntertwiner) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Per trial: a finite p-subgroup `Q` of units built by conjugation (even
/// trials by a unit centralizing `N`, odd trials by an arbitrary unit), a
/// Ward-Coleman factorization of each generator of `Q` with respect to `N`
/// and the collapse side check (even trials), and an independent search for
/// a unit conjugating `Q` into `G`.
pub fn run_theorem_a_campaign(
    entry: &LoadedEntry,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CampaignReport> {
    let started = Instant::now();
    entry.require_admissible()?;
    let ctx = ZpkContext::new(entry.p(), k)?;
    let mut report = CampaignReport::new("theorem-a", entry, k, seed, trials);
    let outcomes = exec.map(trials as usize, |t| theorem_a_trial(entry, ctx, t, seed));
    let outcomes: Vec<TheoremATrial> = outcomes.into_iter().collect::<Result<_>>()?;

    let factorizations: u64 = outcomes.iter().map(|o| o.factorizations).sum();
    let wc = first_failure(outcomes.iter().map(|o| o.wc_failure.clone()).collect());
    let l2 = first_failure(outcomes.iter().map(|o| o.l2_failure.clone()).collect());
    let certified = outcomes.iter().filter(|o| o.certified).count() as u64;
    report.checks.push(match wc {
        Some(cx) => CheckResult::fail("ward-coleman", factorizations, seed, cx),
        None => CheckResult::pass("ward-coleman", factorizations, seed),
    });
    report.checks.push(match l2 {
        Some(cx) => CheckResult::fail("lemma-l2", factorizations, seed, cx),
        None => CheckResult::pass("lemma-l2", factorizations, seed),
    });
    let mut conj = CheckResult::pass("theorem-a", trials, seed).with_note(format!(
        "{certified} of {trials} subgroups conjugated into G by a verified unit"
    ));
    conj.inconclusive = trials - certified;
    report.checks.push(conj);
    Ok(report.finish(started))
}

fn torsion_cx(
    entry: &LoadedEntry,
    k: u32,
    u: &[u64],
    allowed: &[usize],
    central: bool,
) -> Counterexample {
    Counterexample {
        group: entry.group.name().to_string(),
        p: entry.p(),
        k,
        claim: Claim::GenuineTorsionOutside {
            u: u.to_vec(),
            centralized: entry.n.members().to_vec(),
            allowed: allowed.to_vec(),
            delta: THEOREM_B_DELTA,
            central,
        },
    }
}

fn group_element_of(u: &[u64]) -> Option<usize> {
    let mut it = u.iter().enumerate().filter(|(_, &x)| x != 0);
    match (it.next(), it.next()) {
        (Some((g, &1)), None) => Some(g),
        _ => None,
    }
}

/// Random aug-1 elements of the `N`-class-sum span at precision `k`; the
/// genuine torsion ones are collected. Used when the span is too large to
/// enumerate.
fn sampled_torsion(
    entry: &LoadedEntry,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<TorsionEnumeration> {
    let group = &entry.group;
    let p = entry.p();
    let ctx = ZpkContext::new(p, k)?;
    let orbits = group.n_class_partition(&entry.n)?;
    let space: Vec<Vec<u64>> = orbits
        .iter()
        .map(|o| {
            let mut v = vec![0; group.order()];
            o.iter().for_each(|&g| v[g] = 1);
            v
        })
        .collect();
    let cap = default_order_cap(group, p);
    let outcomes = exec.map(
        trials as usize,
        |t| -> Result<Option<(Vec<u64>, LiftVerdict)>> {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
            // near-torsion draws: a group element of Z(N) times 1 + p^(k-1) r
            let z = entry.group.centralizer(entry.n.members());
            let g = *z.members().choose(&mut rng).expect("nonempty");
            let mut coeffs = vec![0; group.order()];
            let mut aug = 0;
            for orbit in &orbits[1..] {
                let c = ctx.mul(rng.gen_range(0..p), ctx.p_pow(k - 1));
                orbit.iter().for_each(|&x| coeffs[x] = c);
                aug = ctx.add(aug, ctx.mul(c, orbit.len() as u64));
            }
            coeffs[0] = ctx.sub(1, aug);
            let r = RingElement::from_coeffs(group, ctx, coeffs)?;
            let u = &RingElement::group_element(group, ctx, g) * &r;
            if u.unit_order(cap)?.exponent().is_none() {
                return Ok(None);
            }
            let verdict = lift_solve(group, p, k, THEOREM_B_DELTA.min(k), u.coeffs(), &space)?
                .ok_or_else(|| Error::Input("order chain disagrees".into()))?;
            Ok(Some((u.into_coeffs(), verdict)))
        },
    );
    let mut out = TorsionEnumeration {
        p,
        k0: k,
        delta: THEOREM_B_DELTA.min(k),
        rank: orbits.len(),
        candidates: trials,
        torsion: 0,
        genuine: Vec::new(),
        spurious: 0,
        spurious_examples: Vec::new(),
    };
    for o in outcomes {
        if let Some((u, v)) = o? {
            out.torsion += 1;
            match v {
                LiftVerdict::Genuine => out.genuine.push(u),
                LiftVerdict::Spurious => out.spurious += 1,
            }
        }
    }
    Ok(out)
}

/// Exhaustive torsion oracle on `C_V(N)` modulo `p^2` with lifts tested
/// modulo `p^4`: survivors must be elements of `N`; central survivors must
/// be elements of `Z(G)`; survivors in `1 + I(N)G` must lie in `N`.
pub fn run_theorem_b_campaign(
    entry: &LoadedEntry,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<CampaignReport> {
    let started = Instant::now();
    entry.require_admissible()?;
    let group = &entry.group;
    let p = entry.p();
    let mut report = CampaignReport::new("theorem-b", entry, k, seed, trials);
    let (en, exhaustive) = match enumerate_torsion_centralizer(
        group,
        &entry.n,
        p,
        THEOREM_B_K0,
        THEOREM_B_DELTA,
        exec,
    ) {
        Ok(e) => (e, true),
        Err(Error::RankTooLarge { .. }) => (sampled_torsion(entry, k, trials, seed, exec)?, false),
        Err(e) => return Err(e),
    };
    let kk = en.k0;
    let n_members = entry.n.members().to_vec();
    let center = group.center();
    let classes = group.conjugacy_classes();
    let is_central = |u: &[u64]| classes.iter().all(|c| c.iter().all(|&g| u[g] == u[c[0]]));
    let low = ZpkContext::new(p, kk)?;
    let ideal = DistinguishedSubmodules::new(group, low).aug_ideal_two_sided(&entry.n)?;

    let mut b_fail = None;
    let mut cor_fail = None;
    let mut c4_fail = None;
    let (mut central_count, mut c4_count) = (0u64, 0u64);
    for u in &en.genuine {
        let elt = group_element_of(u);
        if b_fail.is_none() && !elt.is_some_and(|g| entry.n.contains(g)) {
            b_fail = Some(torsion_cx(entry, kk, u, &n_members, false));
        }
        if is_central(u) {
            central_count += 1;
            if cor_fail.is_none() && !elt.is_some_and(|g| center.contains(g)) {
                cor_fail = Some(torsion_cx(entry, kk, u, center.members(), true));
            }
        }
        let mut minus_one = u.clone();
        minus_one[0] = low.sub(minus_one[0], 1);
        if ideal.contains(&minus_one)? {
            c4_count += 1;
            if c4_fail.is_none() && !elt.is_some_and(|g| entry.n.contains(g)) {
                c4_fail = Some(torsion_cx(entry, kk, u, &n_members, false));
            }
        }
    }
    let mode = if exhaustive {
        format!(
            "exhaustive: {} candidates mod {}^{}, {} torsion, {} spurious, {} genuine (lifts mod {}^{})",
            en.candidates,
            p,
            kk,
            en.torsion,
            en.spurious,
            en.genuine.len(),
            p,
            kk + en.delta
        )
    } else {
        format!(
            "rank {} exceeds the enumeration limit; {} sampled units, {} torsion, {} genuine",
            en.rank,
            en.candidates,
            en.torsion,
            en.genuine.len()
        )
    };
    let genuine = en.genuine.len() as u64;
    let mk = |name: &str, n: u64, fail: Option<Counterexample>, note: String| {
        match fail {
            Some(cx) => CheckResult::fail(name, n, seed, cx),
            None => CheckResult::pass(name, n, seed),
        }
        .with_note(note)
    };
    report.checks.push(mk("theorem-b", genuine, b_fail, mode));
    report.checks.push(mk(
        "corollary-central",
        central_count,
        cor_fail,
        format!("{central_count} central survivors"),
    ));
    report.checks.push(mk(
        "corollary-c4",
        c4_count,
        c4_fail,
        format!("{c4_count} survivors in 1 + I(N)G"),
    ));
    report.enumeration = Some(en);
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::super::{Catalog, Verdict};
    use super::*;

    fn entry(name: &str, p: u64) -> LoadedEntry {
        Catalog::embedded()
            .find(name, Some(p))
            .unwrap()
            .load()
            .unwrap()
    }

    #[test]
    fn c2_identity_suite() {
        let e = entry("C2", 2);
        let r = run_identity_suite(&e, 8, 20, 1, Exec::Sequential).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
        assert!(r.skipped.iter().any(|s| s.name == "lemma-odd"));
    }

    #[test]
    fn c2_theorem_b_exact() {
        let e = entry("C2", 2);
        let r = run_theorem_b_campaign(&e, 8, 10, 1, Exec::Sequential).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let en = r.enumeration.unwrap();
        assert_eq!(en.genuine, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(en.torsion, 4);
    }

    #[test]
    fn theorem_a_small() {
        let e = entry("S4", 2);
        let r = run_theorem_a_campaign(&e, 8, 4, 3, Exec::Sequential).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
        assert_eq!(r.checks[2].inconclusive, 0);
    }

    #[test]
    fn ward_coleman_d8() {
        let e = entry("D8", 2);
        let ctx = ZpkContext::new(2, 8).unwrap();
        assert!(
            check_ward_coleman(&e, ctx, 10, 4, Exec::Sequential)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn inadmissible_entry_rejected() {
        let e = entry("S3", 2);
        assert!(matches!(
            run_theorem_b_campaign(&e, 8, 1, 0, Exec::Sequential),
            Err(Error::Input(_))
        ));
        assert!(run_check(
            "no-such",
            &e,
            ZpkContext::new(2, 8).unwrap(),
            1,
            0,
            Exec::Sequential
        )
        .is_err());
    }
}
