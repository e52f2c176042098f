//! Exact linear algebra over `Z/p^k`: Howell normal form, membership,
//! kernels, linear solves and p-saturation.

mod howell;
mod matrix;
mod snf;
mod solve;
mod zpk;

pub use howell::{howell_form, Submodule};
pub use matrix::Matrix;
pub use snf::{saturate, smith_form, SmithForm};
pub use solve::{kernel, solve, Solution};
pub use zpk::{default_precision, is_prime, p_part_exponent, ZpkContext, MAX_MODULUS};

pub(crate) use zpk::LAZY_REDUCTION_BOUND;
