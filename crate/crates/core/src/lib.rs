//! Verification toolkit for p-adic group rings at truncated precision
//! `Z/p^k`: finite groups, exact linear algebra over `Z/p^k`, group-ring
//! arithmetic, identity checkers, conjugacy constructions and campaigns.

pub mod conjugacy;
pub mod error;
pub mod exec;
pub mod group;
pub mod harness;
pub mod identities;
pub mod linalg;
pub mod ring;

pub use error::{Error, Result};
