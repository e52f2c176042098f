use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::ring::{RingElement, RingElementJson};

/// `input = g * w` with `g ∈ N_G(H)` and `w` centralizing `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WardColemanFactorization {
    pub input: RingElement,
    pub group_part: usize,
    pub centralizing_part: RingElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct WardColemanJson {
    pub input: RingElementJson,
    pub group_part: usize,
    pub centralizing_part: RingElementJson,
}

impl WardColemanFactorization {
    /// `g w = u` and `w h = h w` for every `h ∈ H`.
    pub fn verify(&self, h: &Subgroup) -> bool {
        let group = self.input.group();
        let ctx = self.input.ctx();
        let g = RingElement::group_element(group, ctx, self.group_part);
        let w = &self.centralizing_part;
        if &g * w != self.input || w.augmentation() != 1 % ctx.modulus() {
            return false;
        }
        h.members().iter().all(|&x| {
            let xv = RingElement::group_element(group, ctx, x);
            &xv * w == w * &xv
        })
    }

    pub fn to_json(&self) -> WardColemanJson {
        WardColemanJson {
            input: self.input.to_json(),
            group_part: self.group_part,
            centralizing_part: self.centralizing_part.to_json(),
        }
    }
}

/// Factors a unit normalizing `H` by scanning `N_G(H)` for an element
/// inducing the same automorphism on a generating set of `H`.
pub fn ward_coleman_factor(u: &RingElement, h: &Subgroup) -> Result<WardColemanFactorization> {
    let group = u.group();
    let ctx = u.ctx();
    if u.augmentation() != 1 % ctx.modulus() {
        return Err(Error::HypothesisViolated(
            "unit must have augmentation 1".into(),
        ));
    }
    let u_inv = u.try_invert()?;
    let gens = h.generators(group);
    let mut images = Vec::with_capacity(gens.len());
    for &x in &gens {
        let xv = RingElement::group_element(group, ctx, x);
        let img = &(&u_inv * &xv) * u;
        match img.as_group_element() {
            Some(y) if h.contains(y) => images.push(y),
            _ => return Err(Error::NotNormalizing),
        }
    }
    let normalizer = group.normalizer(h);
    let g = normalizer
        .members()
        .iter()
        .copied()
        .find(|&g| {
            gens.iter()
                .zip(&images)
                .all(|(&x, &y)| group.conj(x, g) == y)
        })
        .ok_or(Error::FactorizationFailed)?;
    let g_inv = RingElement::group_element(group, ctx, group.inv(g));
    let w = &g_inv * u;
    let f = WardColemanFactorization {
        input: u.clone(),
        group_part: g,
        centralizing_part: w,
    };
    if !f.verify(h) {
        return Err(Error::FactorizationFailed);
    }
    Ok(f)
}
