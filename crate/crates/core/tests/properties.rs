mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{c_n, d8, howell_case, plain_mul, s3, s4, solve_case};
use pblock::conjugacy::{build_torsion_subgroup, ward_coleman_factor, TorsionStyle};
use pblock::exec::Exec;
use pblock::group::FiniteGroup;
use pblock::identities::check_formula_12;
use pblock::linalg::{saturate, smith_form, Submodule, ZpkContext};
use pblock::ring::{random_aug_one_unit, random_element, RingElement};

fn small_group(i: usize) -> Arc<FiniteGroup> {
    match i % 4 {
        0 => s3(),
        1 => d8(),
        2 => c_n(4),
        _ => s4(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn howell_form_is_canonical(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(howell_case(&mut rng), Ok(()));
    }

    #[test]
    fn solve_agrees_with_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(solve_case(&mut rng), Ok(()));
    }

    #[test]
    fn saturation_is_a_closure_operator(
        rows in prop::collection::vec(prop::collection::vec(0u64..27, 3), 0..4),
    ) {
        let ctx = ZpkContext::new(3, 3).unwrap();
        let s = Submodule::from_generators(ctx, 3, rows);
        let sat = saturate(&s);
        prop_assert!(sat.contains_module(&s));
        prop_assert_eq!(saturate(&sat), sat.clone());
        // sat is a free summand of the same rank as the non-zero part of S
        let fs = smith_form(ctx, 3, s.rows());
        let ft = smith_form(ctx, 3, sat.rows());
        prop_assert!(ft.exponents.iter().all(|&d| d == 0));
        prop_assert_eq!(ft.exponents.len(), fs.exponents.iter().filter(|&&d| d < 3).count());
    }

    #[test]
    fn ring_axioms(seed in any::<u64>(), gi in 0usize..4, k in 1u32..9) {
        let g = small_group(gi);
        let ctx = ZpkContext::new(2, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, ctx, &mut rng);
        let y = random_element(&g, ctx, &mut rng);
        let z = random_element(&g, ctx, &mut rng);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        let xy_plain = plain_mul(&g, ctx.modulus(), x.coeffs(), y.coeffs());
        prop_assert_eq!((&x * &y).coeffs().to_vec(), xy_plain);
        prop_assert_eq!((&x * &y).augmentation(), ctx.mul(x.augmentation(), y.augmentation()));
        let v = random_aug_one_unit(&g, ctx, &mut rng);
        let xy = &x * &y;
        prop_assert_eq!(xy.conjugate(&v).unwrap(), &x.conjugate(&v).unwrap() * &y.conjugate(&v).unwrap());
        prop_assert_eq!(x.conjugate(&v).unwrap().augmentation(), x.augmentation());
    }

    #[test]
    fn conjugation_preserves_unit_order(seed in any::<u64>(), gi in 0usize..4) {
        let g = small_group(gi);
        let ctx = ZpkContext::new(2, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_aug_one_unit(&g, ctx, &mut rng);
        for x in g.p_elements(2) {
            let u = RingElement::group_element(&g, ctx, x).conjugate(&v).unwrap();
            let order = 1u64 << u.unit_order(6).unwrap().exponent().unwrap();
            prop_assert_eq!(order, g.element_order(x) as u64);
        }
    }

    #[test]
    fn ward_coleman_round_trip(seed in any::<u64>()) {
        let g = s4();
        let ctx = ZpkContext::new(2, 8).unwrap();
        let n = g.o_p(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = build_torsion_subgroup(&g, &n, TorsionStyle::ConjugateByCentralizingUnit, ctx, &mut rng).unwrap();
        let cg_n = g.centralizer(n.members());
        let parts: Vec<(RingElement, usize)> = q
            .generators
            .iter()
            .map(|s| {
                let f = ward_coleman_factor(&s.realized, &n).unwrap();
                let gw = &RingElement::group_element(&g, ctx, f.group_part) * &f.centralizing_part;
                assert_eq!(gw, s.realized);
                (s.realized.clone(), f.group_part)
            })
            .collect();
        // x -> g_x C_G(N) is multiplicative
        for (a, ga) in &parts {
            for (b, gb) in &parts {
                let f = ward_coleman_factor(&(a * b), &n).unwrap();
                let expected = g.mul(*ga, *gb);
                prop_assert!(cg_n.contains(g.mul(g.inv(expected), f.group_part)));
            }
        }
    }

    #[test]
    fn exec_modes_agree(seed in any::<u64>()) {
        let g = d8();
        let ctx = ZpkContext::new(2, 6).unwrap();
        let a = check_formula_12(&g, ctx, 20, seed, Exec::Sequential).unwrap();
        let b = check_formula_12(&g, ctx, 20, seed, Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}
