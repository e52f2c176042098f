//! Checkers for the group-ring identities and containments. Each checker
//! returns a [`CheckResult`]; a failure carries a [`Counterexample`] that
//! [`reverify`] confirms with plain arithmetic and Smith-form membership.

mod abc;
mod centralizer;
mod formulas;
mod lemmas;
mod reverify;
mod target;

pub use abc::{check_lemma_abc, check_lemma_abc_constructed, hypothesis_pair, AbcPair};
pub use centralizer::{check_centralizer_local, check_sbor_a, check_sbor_b, involution_lifts};
pub use formulas::{
    check_formula_11, check_formula_12, check_formula_13, check_formula_14, check_formula_2,
    norm_kernel,
};
pub use lemmas::{check_lemma_l1, check_lemma_odd, odd_margin};
pub use reverify::reverify;
pub use target::{build_target, TargetPart};

use serde::{Deserialize, Serialize};

/// Outcome of one checker run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub trials: u64,
    pub seed: u64,
    pub counterexample: Option<Counterexample>,
    /// Trials whose outcome could not be decided within budget.
    #[serde(default)]
    pub inconclusive: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str, trials: u64, seed: u64) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: true,
            trials,
            seed,
            counterexample: None,
            inconclusive: 0,
            note: None,
        }
    }

    pub fn fail(name: &str, trials: u64, seed: u64, cx: Counterexample) -> Self {
        CheckResult {
            passed: false,
            counterexample: Some(cx),
            ..Self::pass(name, trials, seed)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// A failed claim, stated at an explicit precision `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub group: String,
    pub p: u64,
    pub k: u32,
    pub claim: Claim,
}

/// What the counterexample asserts. Vectors are coefficient vectors in
/// element-index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `element` is not in the sum of the target parts.
    Outside {
        element: Vec<u64>,
        target: Vec<TargetPart>,
    },
    /// `(sum terms)^exponent` minus, if `subtract_powers`, `sum terms_i^exponent`
    /// lies outside the target.
    PowerOutside {
        terms: Vec<Vec<u64>>,
        exponent: u64,
        subtract_powers: bool,
        target: Vec<TargetPart>,
    },
    /// `p^j element` lies in the target but `element` does not.
    NotSaturated {
        element: Vec<u64>,
        j: u32,
        target: Vec<TargetPart>,
    },
    /// Membership of `element` in `[RG]^{1-c}` disagrees with the vanishing
    /// of its conjugation norm modulo `p^(k + extra)`.
    NormMismatch {
        element: Vec<u64>,
        c: usize,
        extra: u32,
    },
    /// `u` is in `1 + pRG` with `u^p = 1` but `u - 1` is not divisible by
    /// `p^margin`.
    TorsionViolator { u: Vec<u64>, margin: u32 },
    /// `4(f + f^2) u^-1 c != c u^-1 - (c u^-1)^c` with `c^-1 u = 1 + 2f`.
    AbcIdentity {
        c: usize,
        u: Vec<u64>,
        u_inv: Vec<u64>,
    },
    /// `element^power != 0` with `power` at least the ambient dimension.
    NotNilpotent { element: Vec<u64>, power: u64 },
    /// `u` has augmentation 1, commutes with `centralized`, has p-power order
    /// modulo `p^k` with a torsion lift modulo `p^(k+delta)` inside the span
    /// of the `centralized`-class sums, and is not congruent to any element of
    /// `allowed`. With `central`, `u` also commutes with all of `G`.
    GenuineTorsionOutside {
        u: Vec<u64>,
        centralized: Vec<usize>,
        allowed: Vec<usize>,
        delta: u32,
        #[serde(default)]
        central: bool,
    },
    /// `u` normalizes the subgroup `h` but no element of `N_G(h)` induces
    /// the same automorphism.
    NoFactorization { u: Vec<u64>, h: Vec<usize> },
    /// Modulo `p`, the image of `u` in the group algebra of `G/kernel` is not
    /// the coset of `group_part`.
    CollapseMismatch {
        u: Vec<u64>,
        group_part: usize,
        kernel: Vec<usize>,
    },
}

/// First failing trial in index order, so the reported counterexample does
/// not depend on scheduling.
pub(crate) fn first_failure<T>(outcomes: Vec<Option<T>>) -> Option<T> {
    outcomes.into_iter().flatten().next()
}
