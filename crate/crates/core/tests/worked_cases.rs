mod common;

use std::collections::HashSet;

use common::{c_n, d8, elem, perm_group, plain_mul, s3, s4, span_enumerate};
use pblock::conjugacy::{
    build_torsion_subgroup, coboundary_conjugator, enumerate_torsion_centralizer,
    intertwiner_conjugator, lift_check_raw, ward_coleman_factor, LiftVerdict, TorsionStyle,
    TorsionUnitKind, TorsionUnitSpec,
};
use pblock::exec::Exec;
use pblock::group::{load_group, FiniteGroup, GroupSpec};
use pblock::identities::{self as id, hypothesis_pair, odd_margin};
use pblock::linalg::{saturate, solve, Matrix, Submodule, ZpkContext};
use pblock::ring::{
    random_aug_one_unit, random_element, DistinguishedSubmodules, RingElement, UnitOrderResult,
};
use pblock::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(p: u64, k: u32) -> ZpkContext {
    ZpkContext::new(p, k).unwrap()
}

fn sorted_labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|&x| g.label(x).to_string()).collect();
    v.sort();
    v
}

#[test]
fn group_loading() {
    let trivial = GroupSpec::perm("1", 0, vec![]);
    assert_eq!(load_group(&trivial, 200).unwrap().order(), 1);
    assert_eq!(s3().order(), 6);
    let c4_table: Vec<Vec<usize>> = (0..4)
        .map(|a| (0..4).map(|b| (a + b) % 4).collect())
        .collect();
    let c4 = FiniteGroup::from_table("C4", c4_table).unwrap();
    let mut orders: Vec<usize> = (0..4).map(|x| c4.element_order(x)).collect();
    orders.sort();
    assert_eq!(orders, vec![1, 2, 4, 4]);
    assert!(c4.validate().is_ok());
    // the generators generate
    let g = s4();
    assert_eq!(g.closure(g.generators()).len(), 24);
}

#[test]
fn normal_p_subgroups_and_admissibility() {
    let c3 = c_n(3);
    assert_eq!(c3.o_p(3).order(), 3);
    assert_eq!(s4().o_p(2).order(), 4);
    assert_eq!(s4().o_p(3).order(), 1);
    let a = c3.is_admissible(3);
    assert!(a.admissible && a.n.order() == 3);
    let a = s4().is_admissible(2);
    assert!(a.admissible && a.n.order() == 4);
    let a = s3().is_admissible(2);
    assert!(!a.admissible);
    assert_eq!(a.n.order(), 1);
    assert!(a.witness.is_some());
}

#[test]
fn centralizers_normalizers_sylows() {
    let g = s4();
    assert_eq!(g.centralizer(&[0]).order(), 24);
    let v4 = g.o_p(2);
    assert_eq!(g.centralizer(v4.members()), v4);
    let s = s3();
    let c3 = s.subgroup_generated(&[elem(&s, "(1 2 3)")]);
    assert_eq!(s.normalizer(&c3).order(), 6);
    assert_eq!(s.centralizer(c3.members()), c3);

    assert_eq!(c_n(6).sylow(2).order(), 2);
    assert_eq!(d8().sylow(2).order(), 8);
    let p = g.sylow(2);
    assert_eq!(p.order(), 8);
    assert!(p.members().iter().any(|&x| g.element_order(x) == 4));
    let non_abelian = p
        .members()
        .iter()
        .any(|&x| p.members().iter().any(|&y| g.mul(x, y) != g.mul(y, x)));
    assert!(non_abelian);
}

#[test]
fn orbits_special_sets_quotients() {
    let g = s4();
    let z = d8().center().members()[1];
    assert_eq!(d8().n_class_orbit(&d8().whole(), z).unwrap(), vec![z]);
    let s = s3();
    let c3 = s.o_p(3);
    let orbit = s.n_class_orbit(&c3, elem(&s, "(1 2)")).unwrap();
    assert_eq!(sorted_labels(&s, &orbit), vec!["(1 2)", "(1 3)", "(2 3)"]);
    assert_eq!(
        g.n_class_orbit(&g.o_p(2), elem(&g, "(1 2)")).unwrap().len(),
        2
    );

    let c3g = c_n(3);
    let sets = c3g.special_sets(2);
    assert!(sets.involutions.is_empty());
    assert_eq!(sets.p_prime.len(), 3);
    assert_eq!(s.special_sets(2).involutions.len(), 3);
    assert_eq!(c_n(4).special_sets(2).involutions.len(), 1);

    let q = g.quotient_by(&g.trivial_subgroup()).unwrap();
    assert_eq!(q.quotient.order(), 24);
    assert!((0..24).all(|x| q.project(x) == x));
    assert_eq!(g.quotient_by(&g.o_p(2)).unwrap().quotient.order(), 6);
    let c4 = c_n(4);
    let c2 = c4.subgroup_generated(&[c4.special_sets(2).involutions[0]]);
    assert_eq!(c4.quotient_by(&c2).unwrap().quotient.order(), 2);
}

#[test]
fn howell_membership_solve_saturate() {
    let z4 = ctx(2, 2);
    assert!(Submodule::from_generators(z4, 3, vec![vec![0, 0, 0]]).is_zero());
    let s = Submodule::from_generators(z4, 1, vec![vec![2]]);
    assert_eq!(s.rows(), &[vec![2]]);
    assert!(s.contains(&[2]).unwrap());
    assert!(!s.contains(&[1]).unwrap());

    let z8 = ctx(2, 3);
    let gens = vec![vec![2, 0], vec![0, 4], vec![2, 4]];
    let s = Submodule::from_generators(z8, 2, gens.clone());
    assert_eq!(s.rows().len(), 2);
    let span = span_enumerate(8, 2, &gens);
    assert_eq!(span.len(), 8);
    assert_eq!(1u64 << s.log_size(), 8);

    let z9 = ctx(3, 2);
    let s = Submodule::from_generators(z9, 1, vec![vec![3]]);
    assert!(s.contains(&[0]).unwrap());
    assert_eq!(s.coordinates(&[6]).unwrap(), Some(vec![2]));

    let a = Matrix::from_rows(z4, 1, &[vec![2]]).unwrap();
    let sol = solve(&a, &[2]).unwrap();
    assert_eq!(sol.particular, vec![1]);
    assert_eq!(sol.kernel.rows(), &[vec![2]]);
    let zero = solve(&a, &[0]).unwrap();
    assert_eq!(zero.particular, vec![0]);
    assert!(matches!(solve(&a, &[1]), Err(Error::NoSolution)));

    let full = Submodule::full(z8, 2);
    assert_eq!(saturate(&full), full);
    assert_eq!(
        saturate(&Submodule::from_generators(z8, 1, vec![vec![2]])),
        Submodule::from_generators(z8, 1, vec![vec![1]])
    );
    assert_eq!(
        saturate(&Submodule::from_generators(z8, 2, vec![vec![2, 2]])),
        Submodule::from_generators(z8, 2, vec![vec![1, 1]])
    );
}

#[test]
fn ring_arithmetic_cases() {
    let g = s3();
    let c = ctx(2, 3);
    let x = elem(&g, "(1 2 3)");
    let gx = RingElement::group_element(&g, c, x);
    let gi = RingElement::group_element(&g, c, g.inv(x));
    assert!((&gx * &gi).is_one());
    let s = RingElement::group_element(&g, c, elem(&g, "(1 2)"));
    let one = RingElement::one(&g, c);
    let sm1 = &s - &one;
    assert_eq!(&sm1 * &sm1, (&one - &s).scale(2));
    assert_eq!(gx.augmentation(), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = random_element(&g, c, &mut rng);
    assert_eq!((&sm1 * &r).augmentation(), 0);

    let c2 = c_n(2);
    let z8 = ctx(2, 3);
    let u = RingElement::from_coeffs(&c2, z8, vec![7, 2]).unwrap();
    let inv = u.try_invert().unwrap();
    assert_eq!(inv.coeffs(), &[3, 6]);
    assert_eq!(plain_mul(&c2, 8, u.coeffs(), inv.coeffs()), vec![1, 0]);
    let two = RingElement::scalar(&c2, z8, 2);
    assert!(matches!(two.try_invert(), Err(Error::NotUnit)));
    let w = &one_of(&c2, z8) + &random_element(&c2, z8, &mut rng).scale(2);
    assert!((&w * &w.try_invert().unwrap()).is_one());
}

fn one_of(g: &std::sync::Arc<FiniteGroup>, c: ZpkContext) -> RingElement {
    RingElement::one(g, c)
}

#[test]
fn unit_orders_and_conjugation() {
    let g = s4();
    let c = ctx(2, 8);
    let x = elem(&g, "(1 2 3 4)");
    let gx = RingElement::group_element(&g, c, x);
    assert_eq!(
        gx.unit_order(5).unwrap(),
        UnitOrderResult::Order {
            exponent: 2,
            order: 4
        }
    );
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let v = random_aug_one_unit(&g, c, &mut rng);
    let u = gx.conjugate(&v).unwrap();
    assert_eq!(u.unit_order(5).unwrap().exponent(), Some(2));
    assert_eq!(u.augmentation(), 1);
    assert_eq!(gx.conjugate(&one_of(&g, c)).unwrap(), gx);
    let sum = RingElement::set_sum(&g, c, &(0..24).collect::<Vec<_>>());
    assert_eq!(sum.conjugate(&v).unwrap(), sum);
    // 1 + 2^(k-1)(s - 1) squares to 1 mod 2^k, by truncation only
    let s = RingElement::group_element(&g, c, elem(&g, "(1 2)"));
    let fake = &one_of(&g, c) + &(&s - &one_of(&g, c)).scale(1 << 7);
    assert_eq!(fake.unit_order(5).unwrap().exponent(), Some(1));
    assert_eq!(lift_check_raw(&fake, 2).unwrap(), LiftVerdict::Spurious);
}

#[test]
fn distinguished_submodules() {
    let c4 = c_n(4);
    let subs = DistinguishedSubmodules::new(&c4, ctx(2, 6));
    assert!(subs.commutator().is_zero());
    assert!(subs.twisted(0).is_zero());

    // [RG,RG] over S3 mod 9 against the brute-force span of all g^h - g
    let g = s3();
    let c = ctx(3, 2);
    let gens: Vec<Vec<u64>> = (0..6)
        .flat_map(|x| (0..6).map(move |h| (x, h)))
        .map(|(x, h)| {
            let mut v = vec![0u64; 6];
            v[g.conj(x, h)] += 1;
            v[x] = (v[x] + 8) % 9;
            v
        })
        .collect();
    assert_eq!(gens.len(), 36);
    let brute = span_enumerate(9, 6, &gens);
    let comm = DistinguishedSubmodules::new(&g, c).commutator();
    assert_eq!(3u64.pow(comm.log_size()) as usize, brute.len());
    assert!(brute.iter().all(|v| comm.contains(v).unwrap()));

    // N-class sums
    let s4g = s4();
    let v4 = s4g.o_p(2);
    let z = v4.members()[1];
    assert_eq!(
        pblock::ring::n_class_sum(&s4g, &v4, z, ctx(2, 4))
            .unwrap()
            .as_group_element(),
        Some(z)
    );
    let c3 = g.o_p(3);
    let t = pblock::ring::n_class_sum(&g, &c3, elem(&g, "(1 2)"), c).unwrap();
    let support: Vec<usize> = (0..6).filter(|&x| t.coeff(x) == 1).collect();
    assert_eq!(sorted_labels(&g, &support), vec!["(1 2)", "(1 3)", "(2 3)"]);
    for &n in c3.members() {
        let nv = RingElement::group_element(&g, c, n);
        assert_eq!(&nv * &t, &t * &nv);
    }
}

#[test]
fn identity_checkers_on_named_cases() {
    let c3 = c_n(3);
    assert!(
        id::check_sbor_a(&c3, &c3.whole(), ctx(3, 5))
            .unwrap()
            .passed
    );
    let g = s4();
    assert!(id::check_sbor_a(&g, &g.o_p(2), ctx(2, 8)).unwrap().passed);
    let s = s3();
    assert!(id::check_sbor_a(&s, &s.o_p(3), ctx(3, 5)).unwrap().passed);
    assert!(id::check_sbor_b(&d8(), ctx(2, 8)).unwrap().passed);
    assert!(id::check_sbor_b(&g, ctx(2, 8)).unwrap().passed);
    let f = g.o_p(2);
    let t = id::involution_lifts(&g, &f).unwrap();
    assert_eq!(t.len(), 3);
    let sl23 = perm_group(
        "SL(2,3)",
        8,
        &[vec![3, 7, 2, 6, 1, 5, 0, 4], vec![0, 1, 3, 4, 2, 7, 5, 6]],
    );
    assert_eq!(sl23.o_p(2).order(), 8);
    assert!(id::check_sbor_b(&sl23, ctx(2, 8)).unwrap().passed);

    assert!(id::check_formula_11(&c_n(4), ctx(2, 8)).unwrap().passed);
    assert!(id::check_formula_11(&s, ctx(2, 6)).unwrap().passed);
    assert!(id::check_formula_11(&d8(), ctx(2, 8)).unwrap().passed);
    assert!(
        id::check_formula_12(&g, ctx(2, 8), 500, 1, Exec::available())
            .unwrap()
            .passed
    );
    assert!(
        id::check_formula_13(&s, ctx(3, 5), 1, 2, 50, 2, Exec::available())
            .unwrap()
            .passed
    );
    assert!(
        id::check_formula_13(&s, ctx(3, 5), 3, 2, 200, 2, Exec::available())
            .unwrap()
            .passed
    );
    assert!(
        id::check_formula_14(&g, ctx(2, 8), 200, 3, Exec::available())
            .unwrap()
            .passed
    );
    let c4 = c_n(4);
    let inv = c4.special_sets(2).involutions[0];
    assert!(id::check_formula_2(&c4, inv, ctx(2, 6)).unwrap().passed);
    assert!(id::check_formula_2(&c4, 0, ctx(2, 6)).unwrap().passed);
    for c in [
        elem(&g, "(1 2)"),
        elem(&g, "(1 2 3 4)"),
        elem(&g, "(1 2 3)"),
    ] {
        assert!(id::check_formula_2(&g, c, ctx(2, 8)).unwrap().passed);
    }
    assert!(
        id::check_lemma_odd(&c_n(3), ctx(3, 5), 100_000, 9, Exec::available())
            .unwrap()
            .passed
    );
    assert_eq!(odd_margin(5), 2);
    assert!(
        id::check_lemma_l1(&g, ctx(2, 8), 300, 5, Exec::available())
            .unwrap()
            .passed
    );
    assert!(
        id::check_centralizer_local(&g, &g.o_p(2), 2)
            .unwrap()
            .passed
    );
    assert!(
        id::check_centralizer_local(&sl23, &sl23.o_p(2), 2)
            .unwrap()
            .passed
    );
}

#[test]
fn lemma_abc_cases() {
    let g = d8();
    let c = ctx(2, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for x in g.p_elements(2) {
        let u = RingElement::group_element(&g, c, x);
        assert!(id::check_lemma_abc(&g, x, &u).unwrap().passed);
        let pair = hypothesis_pair(&g, x, c, &mut rng).unwrap();
        assert!(id::check_lemma_abc(&g, x, &pair.u).unwrap().passed);
    }
}

#[test]
fn conjugators() {
    let g = d8();
    let c = ctx(2, 8);
    let refl = elem(&g, "(1 4)(2 3)");
    let u = RingElement::group_element(&g, c, refl);
    let cert = coboundary_conjugator(refl, &u).unwrap();
    assert!(cert.witness.is_one());
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let pair = hypothesis_pair(&g, refl, c, &mut rng).unwrap();
        let cert = coboundary_conjugator(refl, &pair.u).unwrap();
        assert!(cert.verify());
        let lhs = plain_mul(&g, 256, u.coeffs(), cert.witness.coeffs());
        let rhs = plain_mul(&g, 256, cert.witness.coeffs(), pair.u.coeffs());
        assert_eq!(lhs, rhs);
    }
    let cert = intertwiner_conjugator(&u, &u, &mut rng).unwrap();
    assert!(cert.verify());
    let v0 = random_aug_one_unit(&g, c, &mut rng);
    let target = u.conjugate(&v0).unwrap();
    assert!(intertwiner_conjugator(&u, &target, &mut rng)
        .unwrap()
        .verify());
    let r = RingElement::group_element(&g, c, elem(&g, "(1 2 3 4)"));
    assert!(matches!(
        intertwiner_conjugator(&r, &u, &mut rng),
        Err(Error::NoUnitIntertwiner)
    ));
}

#[test]
fn ward_coleman_cases() {
    let g = s4();
    let c = ctx(2, 8);
    let v4 = g.o_p(2);
    let t = elem(&g, "(1 2)");
    let f = ward_coleman_factor(&RingElement::group_element(&g, c, t), &v4).unwrap();
    assert_eq!(f.group_part, t);
    assert!(f.centralizing_part.is_one());
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..10 {
        let w0 = pblock::conjugacy::centralizing_unit(&g, &v4, c, &mut rng).unwrap();
        let u = &RingElement::group_element(&g, c, t) * &w0;
        let f = ward_coleman_factor(&u, &v4).unwrap();
        assert!(f.verify(&v4));
        assert!(v4.contains(g.mul(g.inv(t), f.group_part)));
    }
}

#[test]
fn torsion_subgroups_and_lifts() {
    let g = s4();
    let c = ctx(2, 8);
    let v4 = g.o_p(2);
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let q = build_torsion_subgroup(
        &g,
        &v4,
        TorsionStyle::ConjugateByCentralizingUnit,
        c,
        &mut rng,
    )
    .unwrap();
    assert_eq!(q.h.order(), 8);
    for spec in &q.generators {
        for &n in v4.members() {
            let nv = RingElement::group_element(&g, c, n);
            let img = nv.conjugate(&spec.realized).unwrap();
            assert!(img.as_group_element().is_some_and(|y| v4.contains(y)));
        }
    }
    for (spec, &b) in q.generators.iter().zip(&q.base_generators) {
        if v4.contains(b) {
            assert_eq!(spec.realized.as_group_element(), Some(b));
        }
    }
    let one = RingElement::one(&g, c);
    let trivial = TorsionUnitSpec::new(TorsionUnitKind::GroupElement, 5, &one).unwrap();
    assert_eq!(trivial.lift_check(2).unwrap(), LiftVerdict::Genuine);
    let v = random_aug_one_unit(&g, c, &mut rng);
    let spec = TorsionUnitSpec::new(
        TorsionUnitKind::ConjugatedElement,
        elem(&g, "(1 2 3 4)"),
        &v,
    )
    .unwrap();
    assert_eq!(spec.lift_check(2).unwrap(), LiftVerdict::Genuine);
}

#[test]
fn torsion_enumeration_cases() {
    let c2 = c_n(2);
    let e = enumerate_torsion_centralizer(&c2, &c2.whole(), 2, 2, 2, Exec::Sequential).unwrap();
    // oracle: brute force over (Z/4)[C2] with ε = 1 and lifts over (Z/16)[C2]
    let mut torsion = HashSet::new();
    let mut genuine = HashSet::new();
    for a in 0..4u64 {
        let b = (5 - a) % 4;
        let sq = plain_mul(&c2, 4, &[a, b], &[a, b]);
        if sq != vec![1, 0] {
            continue;
        }
        torsion.insert(vec![a, b]);
        let lifts = (0..4u64).flat_map(|i| (0..4u64).map(move |j| (a + 4 * i, b + 4 * j)));
        for (x, y) in lifts {
            if (x + y) % 16 == 1 && plain_mul(&c2, 16, &[x, y], &[x, y]) == vec![1, 0] {
                genuine.insert(vec![a, b]);
            }
        }
    }
    assert_eq!(torsion.len(), 4);
    assert_eq!(e.torsion, 4);
    let got: HashSet<Vec<u64>> = e.genuine.iter().cloned().collect();
    assert_eq!(got, genuine);
    assert_eq!(got, HashSet::from([vec![1, 0], vec![0, 1]]));
    assert!(e.genuine.contains(&vec![1, 0]));
    assert!(matches!(
        enumerate_torsion_centralizer(&s4(), &s4().trivial_subgroup(), 2, 2, 2, Exec::Sequential),
        Err(Error::RankTooLarge { .. })
    ));
}
