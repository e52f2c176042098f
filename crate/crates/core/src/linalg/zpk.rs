use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus the residue arithmetic accepts. Products of two residues
/// and short sums of them must fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Products below this bound can be summed `|G| <= 200` times without
/// overflow before reducing.
pub(crate) const LAZY_REDUCTION_BOUND: u64 = 1 << 20;

/// The coefficient ring `Z/p^k`, a truncation of the p-adic integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContext", into = "RawContext")]
pub struct ZpkContext {
    p: u64,
    k: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct RawContext {
    p: u64,
    k: u32,
}

impl TryFrom<RawContext> for ZpkContext {
    type Error = Error;
    fn try_from(raw: RawContext) -> Result<Self> {
        ZpkContext::new(raw.p, raw.k)
    }
}

impl From<ZpkContext> for RawContext {
    fn from(c: ZpkContext) -> Self {
        RawContext { p: c.p, k: c.k }
    }
}

impl ZpkContext {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Input("precision must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::Input(format!("{p}^{k} exceeds the supported modulus")))?;
        Ok(ZpkContext { p, k, modulus })
    }

    /// Default working precision: 8 for p = 2, 5 otherwise.
    pub fn default_for(p: u64) -> Result<Self> {
        Self::new(p, default_precision(p))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn with_precision(&self, k: u32) -> Result<Self> {
        Self::new(self.p, k)
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut base = a % self.modulus;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `p^j` reduced; zero once `j >= k`.
    pub fn p_pow(&self, j: u32) -> u64 {
        if j >= self.k {
            0
        } else {
            self.p.pow(j)
        }
    }

    /// p-adic valuation of a residue; `k` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = x;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    pub fn inverse(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut old_r, mut r) = (x as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Some(self.reduce_i64(old_s))
    }

    /// Writes a nonzero residue as `p^v * unit` with the unit reduced mod p^k.
    pub fn split(&self, x: u64) -> (u32, u64) {
        let v = self.valuation(x);
        (v, x / self.p.pow(v.min(self.k)))
    }
}

pub fn default_precision(p: u64) -> u32 {
    if p == 2 {
        8
    } else {
        5
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn p_part_exponent(n: u64, p: u64) -> u32 {
    let mut n = n;
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}
