use rand::Rng;

use super::{normalize_augmentation, ConjugacyCertificate};
use crate::error::{Error, Result};
use crate::linalg::{kernel, solve, Matrix, Submodule};
use crate::ring::{default_order_cap, DistinguishedSubmodules, RingElement};

/// Random `Z/p`-combinations tried after the basis rows.
pub const UNIT_SEARCH_BUDGET: usize = 1000;

/// Solves `m - c^-1 m u = f` over `Z/2^(k-1)`, where `c^-1 u = 1 + 2f`, and
/// returns `v = 1 + 2m` (scaled to augmentation 1) with `c v = v u` mod `2^k`.
pub fn coboundary_conjugator(c: usize, u: &RingElement) -> Result<ConjugacyCertificate> {
    let group = u.group();
    let ctx = u.ctx();
    let bad = |m: &str| Error::HypothesisViolated(m.to_string());
    if ctx.p() != 2 || ctx.k() < 2 {
        return Err(bad("requires p = 2 and k >= 2"));
    }
    if !group.element_order(c).is_power_of_two() {
        return Err(bad("c is not a 2-element"));
    }
    let cv = RingElement::group_element(group, ctx, c);
    if &cv * &cv != u * u {
        return Err(bad("c^2 != u^2"));
    }
    if u.unit_order(default_order_cap(group, 2))?
        .exponent()
        .is_none()
    {
        return Err(bad("u is not a 2-element"));
    }
    let c_inv = RingElement::group_element(group, ctx, group.inv(c));
    let one = RingElement::one(group, ctx);
    let f = (&(&c_inv * u) - &one)
        .divide_by_p_power(1)
        .map_err(|_| bad("c^-1 u is not in 1 + 2RG"))?;
    let low = f.ctx();
    let subs = DistinguishedSubmodules::new(group, low);
    let allowed = subs
        .p_multiple(1)
        .sum(&subs.span(&group.special_sets(2).involutions))?
        .sum(&subs.scalars())?;
    if !allowed.contains(f.coeffs())? {
        return Err(bad("f is not in 2RG + R[T_2] + R"));
    }

    let n = group.order();
    let u_low = u.reduce_to(low.k())?;
    let c_inv_idx = group.inv(c);
    let mut a = Matrix::identity(low, n);
    for g in 0..n {
        for (h, &uh) in u_low.coeffs().iter().enumerate() {
            if uh == 0 {
                continue;
            }
            let row = group.mul(group.mul(c_inv_idx, g), h);
            a.set(row, g, low.sub(a.get(row, g), uh));
        }
    }
    let m = solve(&a, f.coeffs()).map_err(|e| match e {
        Error::NoSolution => Error::NoCoboundary,
        other => other,
    })?;
    let m = RingElement::from_coeffs(group, low, m.particular)?.lift_to(ctx.k())?;
    let v = &one + &m.scale(2);
    let v = normalize_augmentation(&v).ok_or(Error::NotUnit)?;
    if !v.is_unit() {
        return Err(Error::NotUnit);
    }
    let cert = ConjugacyCertificate {
        source: cv,
        target: u.clone(),
        witness: v,
    };
    if !cert.verify() {
        return Err(Error::NoCoboundary);
    }
    Ok(cert)
}

/// `{X : a_i X = X b_i for all i}`.
fn intertwiner_module(pairs: &[(RingElement, RingElement)]) -> Result<Submodule> {
    let (a0, _) = pairs
        .first()
        .ok_or_else(|| Error::Input("no pairs".into()))?;
    let ctx = a0.ctx();
    let n = a0.group().order();
    let mut a = Matrix::zeros(ctx, n * pairs.len(), n);
    for (block, (x, y)) in pairs.iter().enumerate() {
        if x.ctx() != ctx || y.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        let left = x.left_mul_matrix();
        let right = y.right_mul_matrix();
        for r in 0..n {
            for col in 0..n {
                a.set(
                    block * n + r,
                    col,
                    ctx.sub(left.get(r, col), right.get(r, col)),
                );
            }
        }
    }
    Ok(kernel(&a))
}

/// A unit `w` with `a_i w = w b_i` for every pair, i.e. `w^-1 a_i w = b_i`,
/// found among the basis rows of the intertwiner module and then `budget`
/// random `Z/p`-combinations of them.
pub fn intertwine_all<R: Rng + ?Sized>(
    pairs: &[(RingElement, RingElement)],
    budget: usize,
    rng: &mut R,
) -> Result<RingElement> {
    let module = intertwiner_module(pairs)?;
    let (a0, _) = &pairs[0];
    let group = a0.group();
    let ctx = a0.ctx();
    let accept = |coeffs: Vec<u64>| -> Option<RingElement> {
        let x = RingElement::from_coeffs(group, ctx, coeffs).ok()?;
        if !x.is_unit() {
            return None;
        }
        let w = normalize_augmentation(&x)?;
        pairs.iter().all(|(a, b)| a * &w == &w * b).then_some(w)
    };
    for row in module.rows() {
        if let Some(w) = accept(row.clone()) {
            return Ok(w);
        }
    }
    if module.is_zero() {
        return Err(Error::NoUnitIntertwiner);
    }
    for _ in 0..budget {
        let coords: Vec<u64> = module
            .rows()
            .iter()
            .map(|_| rng.gen_range(0..ctx.p()))
            .collect();
        if let Some(w) = accept(module.combine(&coords)) {
            return Ok(w);
        }
    }
    Err(Error::NoUnitIntertwiner)
}

/// Certificate `v^-1 c v = u` from the intertwiner module of one pair.
pub fn intertwiner_conjugator<R: Rng + ?Sized>(
    c: &RingElement,
    u: &RingElement,
    rng: &mut R,
) -> Result<ConjugacyCertificate> {
    let w = intertwine_all(&[(c.clone(), u.clone())], UNIT_SEARCH_BUDGET, rng)?;
    Ok(ConjugacyCertificate {
        source: c.clone(),
        target: u.clone(),
        witness: w,
    })
}
