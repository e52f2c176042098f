use std::sync::Arc;

use rand::Rng;

use super::RingElement;
use crate::group::FiniteGroup;
use crate::linalg::{Submodule, ZpkContext};

pub fn random_element<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    rng: &mut R,
) -> RingElement {
    let coeffs = (0..group.order())
        .map(|_| rng.gen_range(0..ctx.modulus()))
        .collect();
    RingElement::from_coeffs(group, ctx, coeffs).expect("length matches")
}

/// Random unit of augmentation 1: random coefficients with the identity
/// coefficient adjusted, retried until invertible mod p.
pub fn random_aug_one_unit<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    rng: &mut R,
) -> RingElement {
    loop {
        let x = random_element(group, ctx, rng);
        let fix = ctx.sub(1, x.augmentation());
        let mut coeffs = x.into_coeffs();
        coeffs[0] = ctx.add(coeffs[0], fix);
        let u = RingElement::from_coeffs(group, ctx, coeffs).expect("length matches");
        if u.is_unit() {
            return u;
        }
    }
}

/// `g (1 + p r)` for random `r`; always a unit.
pub fn structured_unit<R: Rng + ?Sized>(
    group: &Arc<FiniteGroup>,
    ctx: ZpkContext,
    g: usize,
    rng: &mut R,
) -> RingElement {
    let r = random_element(group, ctx, rng).scale(ctx.p());
    let one = RingElement::one(group, ctx);
    &RingElement::group_element(group, ctx, g) * &(&one + &r)
}

/// Random element of a submodule: a random combination of its rows.
pub fn random_in<R: Rng + ?Sized>(s: &Submodule, rng: &mut R) -> Vec<u64> {
    let ctx = s.ctx();
    let coords: Vec<u64> = s
        .rows()
        .iter()
        .map(|_| rng.gen_range(0..ctx.modulus()))
        .collect();
    s.combine(&coords)
}
