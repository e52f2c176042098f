use serde::{Deserialize, Serialize};

use super::torsion::{lift_solve, LiftVerdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::ZpkContext;
use crate::ring::{default_order_cap, group_ring_product};

/// Largest number of `N`-classes whose coefficient space is enumerated.
pub const MAX_ENUMERATION_RANK: usize = 14;

const CHUNK: u64 = 1 << 12;
const KEPT_SPURIOUS: usize = 8;

/// Torsion units of augmentation 1 in `C_V(N)` modulo `p^k0`, split by
/// whether they lift to torsion modulo `p^(k0+Δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEnumeration {
    pub p: u64,
    pub k0: u32,
    pub delta: u32,
    /// Number of `N`-classes of `G`.
    pub rank: usize,
    pub candidates: u64,
    pub torsion: u64,
    /// Coefficient vectors (mod `p^k0`) of the torsion units that lift.
    pub genuine: Vec<Vec<u64>>,
    pub spurious: u64,
    pub spurious_examples: Vec<Vec<u64>>,
}

impl TorsionEnumeration {
    /// Survivors that are single group elements, by index.
    pub fn genuine_group_elements(&self) -> Vec<Option<usize>> {
        self.genuine
            .iter()
            .map(|c| {
                let mut it = c.iter().enumerate().filter(|(_, &x)| x != 0);
                match (it.next(), it.next()) {
                    (Some((g, &1)), None) => Some(g),
                    _ => None,
                }
            })
            .collect()
    }
}

#[derive(Default)]
struct Partial {
    torsion: u64,
    genuine: Vec<Vec<u64>>,
    spurious: u64,
    spurious_examples: Vec<Vec<u64>>,
}

struct Scratch<'a> {
    group: &'a FiniteGroup,
    hi: ZpkContext,
    pk0: u64,
    cap: u32,
    a: Vec<u64>,
    b: Vec<u64>,
    prev: Vec<u64>,
}

enum Screen {
    NotTorsion,
    Genuine,
    Spurious,
    Undecided,
}

impl Scratch<'_> {
    fn power_p(&mut self) {
        let p = self.hi.p();
        self.b.copy_from_slice(&self.a);
        for _ in 1..p {
            self.prev.iter_mut().for_each(|x| *x = 0);
            group_ring_product(self.group, &self.hi, &self.b, &self.a, &mut self.prev);
            std::mem::swap(&mut self.b, &mut self.prev);
        }
        std::mem::swap(&mut self.a, &mut self.b);
        // now a = u^(pm), b = u^m
    }

    fn is_one_mod(x: &[u64], m: u64) -> bool {
        x[0] % m == 1 % m && x[1..].iter().all(|&c| c % m == 0)
    }

    fn screen(&mut self, u: &[u64]) -> Screen {
        let p = self.hi.p();
        self.a.copy_from_slice(u);
        let mut steps = 0;
        while !Self::is_one_mod(&self.a, self.pk0) {
            if steps >= self.cap {
                return Screen::NotTorsion;
            }
            self.power_p();
            steps += 1;
        }
        if Self::is_one_mod(&self.a, self.hi.modulus()) {
            return Screen::Genuine;
        }
        // b holds u^(m/p) when steps >= 1
        if steps >= 1 && Self::is_one_mod(&self.b, p) && !Self::is_one_mod(&self.a, self.pk0 * p) {
            return Screen::Spurious;
        }
        Screen::Undecided
    }
}

/// Enumerates `u = sum_O c_O O_sum` over the `N`-classes `O` with `c_O`
/// in `Z/p^k0` and `ε(u) = 1`, keeps the torsion units, and tests each
/// for a torsion lift modulo `p^(k0+Δ)` inside the class-sum span.
pub fn enumerate_torsion_centralizer(
    group: &FiniteGroup,
    n: &Subgroup,
    p: u64,
    k0: u32,
    delta: u32,
    exec: Exec,
) -> Result<TorsionEnumeration> {
    let orbits = group.n_class_partition(n)?;
    let rank = orbits.len();
    if rank > MAX_ENUMERATION_RANK {
        return Err(Error::RankTooLarge {
            rank,
            limit: MAX_ENUMERATION_RANK,
        });
    }
    let low = ZpkContext::new(p, k0)?;
    let hi = ZpkContext::new(p, k0 + delta)?;
    if delta == 0 || delta > k0 {
        return Err(Error::Input(
            "lift precision must satisfy 1 <= delta <= k0".into(),
        ));
    }
    let order = group.order();
    let space: Vec<Vec<u64>> = orbits
        .iter()
        .map(|o| {
            let mut v = vec![0; order];
            o.iter().for_each(|&g| v[g] = 1);
            v
        })
        .collect();
    let m = low.modulus();
    let total = m
        .checked_pow((rank - 1) as u32)
        .ok_or(Error::RankTooLarge {
            rank,
            limit: MAX_ENUMERATION_RANK,
        })?;
    let cap = default_order_cap(group, p);

    let run = |range: std::ops::Range<u64>| -> Result<Partial> {
        let mut scratch = Scratch {
            group,
            hi,
            pk0: m,
            cap,
            a: vec![0; order],
            b: vec![0; order],
            prev: vec![0; order],
        };
        let mut part = Partial::default();
        let mut u = vec![0u64; order];
        for idx in range {
            let mut rest = idx;
            let mut aug = 0u64;
            for orbit in &orbits[1..] {
                let c = rest % m;
                rest /= m;
                for &g in orbit {
                    u[g] = c;
                }
                aug = hi.add(aug, hi.mul(c, orbit.len() as u64));
            }
            // identity coefficient chosen so that ε(u) = 1 exactly at p^(k0+Δ)
            u[0] = hi.sub(1, aug);
            let verdict = match scratch.screen(&u) {
                Screen::NotTorsion => continue,
                Screen::Genuine => LiftVerdict::Genuine,
                Screen::Spurious => LiftVerdict::Spurious,
                Screen::Undecided => lift_solve(group, p, k0, delta, &u, &space)?
                    .ok_or_else(|| Error::Input("order chain disagrees with screen".into()))?,
            };
            part.torsion += 1;
            let reduced: Vec<u64> = u.iter().map(|&c| c % m).collect();
            match verdict {
                LiftVerdict::Genuine => part.genuine.push(reduced),
                LiftVerdict::Spurious => {
                    part.spurious += 1;
                    if part.spurious_examples.len() < KEPT_SPURIOUS {
                        part.spurious_examples.push(reduced);
                    }
                }
            }
        }
        Ok(part)
    };

    let mut out = TorsionEnumeration {
        p,
        k0,
        delta,
        rank,
        candidates: total,
        torsion: 0,
        genuine: Vec::new(),
        spurious: 0,
        spurious_examples: Vec::new(),
    };
    for part in exec.map_chunks(total, CHUNK, run) {
        let part = part?;
        out.torsion += part.torsion;
        out.genuine.extend(part.genuine);
        out.spurious += part.spurious;
        for x in part.spurious_examples {
            if out.spurious_examples.len() < KEPT_SPURIOUS {
                out.spurious_examples.push(x);
            }
        }
    }
    Ok(out)
}
