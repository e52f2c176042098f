use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{solve, Matrix, ZpkContext, LAZY_REDUCTION_BOUND};

/// An element of `(Z/p^k)[G]`, stored densely in element-index order.
#[derive(Clone)]
pub struct RingElement {
    group: Arc<FiniteGroup>,
    ctx: ZpkContext,
    coeffs: Vec<u64>,
}

/// Smallest `p^a` with `u^(p^a) = 1`, or a miss within the exponent cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitOrderResult {
    Order { exponent: u32, order: u64 },
    UnresolvedAtPrecision,
}

impl UnitOrderResult {
    pub fn exponent(&self) -> Option<u32> {
        match self {
            UnitOrderResult::Order { exponent, .. } => Some(*exponent),
            UnitOrderResult::UnresolvedAtPrecision => None,
        }
    }
}

impl RingElement {
    pub fn zero(group: &Arc<FiniteGroup>, ctx: ZpkContext) -> Self {
        RingElement {
            group: Arc::clone(group),
            ctx,
            coeffs: vec![0; group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteGroup>, ctx: ZpkContext) -> Self {
        Self::group_element(group, ctx, 0)
    }

    pub fn scalar(group: &Arc<FiniteGroup>, ctx: ZpkContext, s: u64) -> Self {
        let mut x = Self::zero(group, ctx);
        x.coeffs[0] = ctx.reduce(s);
        x
    }

    /// The basis vector at `g`.
    pub fn group_element(group: &Arc<FiniteGroup>, ctx: ZpkContext, g: usize) -> Self {
        let mut x = Self::zero(group, ctx);
        x.coeffs[g] = 1 % ctx.modulus();
        x
    }

    /// Sum of the elements of `set` (each counted once per occurrence).
    pub fn set_sum(group: &Arc<FiniteGroup>, ctx: ZpkContext, set: &[usize]) -> Self {
        let mut x = Self::zero(group, ctx);
        for &g in set {
            x.coeffs[g] = ctx.add(x.coeffs[g], 1);
        }
        x
    }

    pub fn from_coeffs(
        group: &Arc<FiniteGroup>,
        ctx: ZpkContext,
        coeffs: Vec<u64>,
    ) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                got: coeffs.len(),
            });
        }
        let coeffs = coeffs.into_iter().map(|c| ctx.reduce(c)).collect();
        Ok(RingElement {
            group: Arc::clone(group),
            ctx,
            coeffs,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ctx(&self) -> ZpkContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn coeff(&self, g: usize) -> u64 {
        self.coeffs[g]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 % self.ctx.modulus() && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// `Some(g)` when the element is exactly the basis vector `g`.
    pub fn as_group_element(&self) -> Option<usize> {
        let mut found = None;
        for (g, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(g),
                _ => return None,
            }
        }
        found
    }

    fn compatible(&self, other: &RingElement) -> Result<()> {
        if self.ctx != other.ctx
            || !(Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
        {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.compatible(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &RingElement) -> RingElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        self.with_coeffs(coeffs)
    }

    fn sub_unchecked(&self, other: &RingElement) -> RingElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        self.with_coeffs(coeffs)
    }

    fn mul_unchecked(&self, other: &RingElement) -> RingElement {
        let mut out = vec![0u64; self.coeffs.len()];
        group_ring_product(
            &self.group,
            &self.ctx,
            &self.coeffs,
            &other.coeffs,
            &mut out,
        );
        self.with_coeffs(out)
    }

    pub(crate) fn with_coeffs(&self, coeffs: Vec<u64>) -> RingElement {
        RingElement {
            group: Arc::clone(&self.group),
            ctx: self.ctx,
            coeffs,
        }
    }

    pub fn scale(&self, s: u64) -> RingElement {
        let s = self.ctx.reduce(s);
        self.with_coeffs(self.coeffs.iter().map(|&c| self.ctx.mul(c, s)).collect())
    }

    pub fn augmentation(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| self.ctx.add(acc, c))
    }

    pub fn pow(&self, e: u64) -> RingElement {
        let mut acc = RingElement::one(&self.group, self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `h^-1 x h` for a group element `h`.
    pub fn conj_by_group_element(&self, h: usize) -> RingElement {
        let mut out = vec![0; self.coeffs.len()];
        for (g, &c) in self.coeffs.iter().enumerate() {
            out[self.group.conj(g, h)] = c;
        }
        self.with_coeffs(out)
    }

    /// Matrix of `y -> self * y` in the group basis.
    pub fn left_mul_matrix(&self) -> Matrix {
        let n = self.group.order();
        let mut m = Matrix::zeros(self.ctx, n, n);
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for h in 0..n {
                let gh = self.group.mul(g, h);
                m.set(gh, h, self.ctx.add(m.get(gh, h), c));
            }
        }
        m
    }

    /// Matrix of `y -> y * self` in the group basis.
    pub fn right_mul_matrix(&self) -> Matrix {
        let n = self.group.order();
        let mut m = Matrix::zeros(self.ctx, n, n);
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for h in 0..n {
                let hg = self.group.mul(h, g);
                m.set(hg, h, self.ctx.add(m.get(hg, h), c));
            }
        }
        m
    }

    /// Image in `(Z/p^j)[G]` for `j <= k`.
    pub fn reduce_to(&self, j: u32) -> Result<RingElement> {
        if j > self.ctx.k() {
            return Err(Error::Input("reduction cannot raise precision".into()));
        }
        let ctx = self.ctx.with_precision(j)?;
        Ok(RingElement {
            group: Arc::clone(&self.group),
            ctx,
            coeffs: self.coeffs.iter().map(|&c| ctx.reduce(c)).collect(),
        })
    }

    /// Lift to `(Z/p^j)[G]`, `j >= k`, keeping the residues in `[0, p^k)`.
    pub fn lift_to(&self, j: u32) -> Result<RingElement> {
        if j < self.ctx.k() {
            return Err(Error::Input("lift cannot lower precision".into()));
        }
        Ok(RingElement {
            group: Arc::clone(&self.group),
            ctx: self.ctx.with_precision(j)?,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Exact division of every coefficient by `p^j`; the result lives at
    /// precision `k - j`.
    pub fn divide_by_p_power(&self, j: u32) -> Result<RingElement> {
        if j >= self.ctx.k() {
            return Err(Error::Input("division would leave no precision".into()));
        }
        let pj = self.ctx.p_pow(j);
        if self.coeffs.iter().any(|&c| c % pj != 0) {
            return Err(Error::HypothesisViolated(format!(
                "coefficients are not divisible by p^{j}"
            )));
        }
        let ctx = self.ctx.with_precision(self.ctx.k() - j)?;
        Ok(RingElement {
            group: Arc::clone(&self.group),
            ctx,
            coeffs: self.coeffs.iter().map(|&c| ctx.reduce(c / pj)).collect(),
        })
    }

    /// Whether the image in `(Z/p)[G]` is invertible.
    pub fn is_unit(&self) -> bool {
        self.inverse_mod_p().is_some()
    }

    fn inverse_mod_p(&self) -> Option<RingElement> {
        let base = self.reduce_to(1).ok()?;
        let mut e = vec![0; self.group.order()];
        e[0] = 1;
        let sol = solve(&base.left_mul_matrix(), &e).ok()?;
        Some(self.with_coeffs(sol.particular))
    }

    /// Inverse via the mod-p inverse and Newton iteration
    /// `y <- y (2 - x y)`, which doubles the p-adic precision each step.
    pub fn try_invert(&self) -> Result<RingElement> {
        let mut y = self.inverse_mod_p().ok_or(Error::NotUnit)?;
        let two = RingElement::scalar(&self.group, self.ctx, 2);
        let mut precision = 1;
        while precision < self.ctx.k() {
            y = &y * &(&two - &(self * &y));
            precision *= 2;
        }
        let one = RingElement::one(&self.group, self.ctx);
        debug_assert!((self * &y) == one && (&y * self) == one);
        if (self * &y) != one {
            return Err(Error::NotUnit);
        }
        Ok(y)
    }

    /// `v^-1 x v`.
    pub fn conjugate(&self, v: &RingElement) -> Result<RingElement> {
        self.compatible(v)?;
        let v_inv = v.try_invert()?;
        Ok(&(&v_inv * self) * v)
    }

    /// Smallest `p^a <= p^cap` with `u^(p^a) = 1`.
    pub fn unit_order(&self, cap: u32) -> Result<UnitOrderResult> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        let p = self.ctx.p();
        let mut x = self.clone();
        for a in 0..=cap {
            if x.is_one() {
                return Ok(UnitOrderResult::Order {
                    exponent: a,
                    order: p.pow(a),
                });
            }
            if a < cap {
                x = x.pow(p);
            }
        }
        Ok(UnitOrderResult::UnresolvedAtPrecision)
    }

    pub fn to_json(&self) -> RingElementJson {
        RingElementJson {
            group: self.group.name().to_string(),
            p: self.ctx.p(),
            k: self.ctx.k(),
            coeffs: self.coeffs.clone(),
        }
    }
}

/// `out += a * b` in the group ring, `out` zero-initialized by the caller.
pub(crate) fn group_ring_product(
    group: &FiniteGroup,
    ctx: &ZpkContext,
    a: &[u64],
    b: &[u64],
    out: &mut [u64],
) {
    let n = group.order();
    let table = group.cayley();
    let m = ctx.modulus();
    if m <= LAZY_REDUCTION_BOUND {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &table[i * n..(i + 1) * n];
            for (&target, &bj) in row.iter().zip(b) {
                out[target] += ai * bj;
            }
        }
        for x in out.iter_mut() {
            *x %= m;
        }
    } else {
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &table[i * n..(i + 1) * n];
            for (&target, &bj) in row.iter().zip(b) {
                out[target] = (out[target] + ai * bj % m) % m;
            }
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingElement({} mod {}^{}: {})",
            self.group.name(),
            self.ctx.p(),
            self.ctx.k(),
            self
        )
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{}", self.group.label(g))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        /// Panics if the operands live in different rings; use the
        /// `checked_*` methods for a fallible version.
        impl<'a> $trait<&'a RingElement> for &'a RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                self.compatible(rhs)
                    .expect("operands must share group and precision");
                self.$inner(rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.with_coeffs(self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }
}

/// Wire form `{ "group", "p", "k", "coeffs" }` in element-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementJson {
    pub group: String,
    pub p: u64,
    pub k: u32,
    pub coeffs: Vec<u64>,
}

impl RingElementJson {
    pub fn into_element(self, group: &Arc<FiniteGroup>) -> Result<RingElement> {
        if group.name() != self.group {
            return Err(Error::Input(format!(
                "element belongs to group {}, not {}",
                self.group,
                group.name()
            )));
        }
        let ctx = ZpkContext::new(self.p, self.k)?;
        RingElement::from_coeffs(group, ctx, self.coeffs)
    }
}
