use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::linalg::Submodule;
use crate::ring::DistinguishedSubmodules;

/// One summand of a membership target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetPart {
    /// `R * 1`.
    Scalars,
    /// `p^scale RG`.
    Full { scale: u32 },
    /// `I_R(H) G` for the normal subgroup with these members.
    AugIdeal { members: Vec<usize> },
    /// `[RG, RG]`.
    Commutator,
    /// `[RG]^{1-c}`.
    Twisted { c: usize },
    /// `p^scale R[T]`.
    Span { set: Vec<usize>, scale: u32 },
    /// `R[T] ∩ [RG, RG]`.
    SpanCapCommutator { set: Vec<usize> },
}

/// Howell form of the sum of the parts.
pub fn build_target(
    group: &FiniteGroup,
    subs: &DistinguishedSubmodules,
    parts: &[TargetPart],
) -> Submodule {
    let ctx = subs.ctx();
    let n = group.order();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for part in parts {
        let s = match part {
            TargetPart::Scalars => subs.scalars(),
            TargetPart::Full { scale } => subs.p_multiple(*scale),
            TargetPart::AugIdeal { members } => {
                let h = group
                    .subgroup_from_members(members)
                    .expect("target subgroup is closed");
                subs.aug_ideal(&h)
            }
            TargetPart::Commutator => subs.commutator(),
            TargetPart::Twisted { c } => subs.twisted(*c),
            TargetPart::Span { set, scale } => subs.span(set).scale_by_p_power(*scale),
            TargetPart::SpanCapCommutator { set } => subs.commutator().restrict_to_coordinates(set),
        };
        gens.extend(s.rows().iter().cloned());
    }
    Submodule::from_generators(ctx, n, gens)
}
