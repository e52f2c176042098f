//! Conjugacy constructions in `(Z/p^k)[G]`: Ward-Coleman factorization,
//! the 2-adic coboundary conjugator, intertwiner search, torsion subgroups
//! built from certified units, and spurious-torsion filtering.

mod conjugators;
mod enumerate;
mod torsion;
mod ward_coleman;

pub use conjugators::{
    coboundary_conjugator, intertwine_all, intertwiner_conjugator, UNIT_SEARCH_BUDGET,
};
pub use enumerate::{enumerate_torsion_centralizer, TorsionEnumeration, MAX_ENUMERATION_RANK};
pub(crate) use torsion::lift_solve;
pub use torsion::{
    build_torsion_subgroup, centralizing_unit, lift_check_raw, LiftVerdict, TorsionStyle,
    TorsionSubgroup, TorsionUnitKind, TorsionUnitSpec,
};
pub use ward_coleman::{ward_coleman_factor, WardColemanFactorization};

use serde::{Deserialize, Serialize};

use crate::ring::{RingElement, RingElementJson};

/// A unit `witness` with `witness^-1 source witness = target`, checked at
/// `precision` (the precision of the elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub source: RingElement,
    pub target: RingElement,
    pub witness: RingElement,
}

impl ConjugacyCertificate {
    pub fn precision(&self) -> u32 {
        self.witness.ctx().k()
    }

    /// `source * witness = witness * target`, `witness` invertible and of
    /// augmentation 1.
    pub fn verify(&self) -> bool {
        let (Ok(lhs), Ok(rhs)) = (
            self.source.checked_mul(&self.witness),
            self.witness.checked_mul(&self.target),
        ) else {
            return false;
        };
        lhs == rhs && self.witness.augmentation() == 1 && self.witness.is_unit()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            precision: self.precision(),
            source: self.source.to_json(),
            target: self.target.to_json(),
            witness: self.witness.to_json(),
        }
    }
}

/// Wire form of a certificate for offline re-verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub precision: u32,
    pub source: RingElementJson,
    pub target: RingElementJson,
    pub witness: RingElementJson,
}

/// Scales a unit by the inverse of its augmentation.
pub(crate) fn normalize_augmentation(v: &RingElement) -> Option<RingElement> {
    let ctx = v.ctx();
    let inv = ctx.inverse(v.augmentation())?;
    Some(v.scale(inv))
}
