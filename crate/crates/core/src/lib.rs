//! Exact symmetric-function arithmetic and inverse limits of semisimple
//! categories.
//!
//! The ring Λ of symmetric functions is built as the restricted inverse
//! limit of the truncated rings R_n = Z[x_1..x_n]^{S_n} ([`symring`],
//! [`lambda`]). The same pattern one level up is handled by the generic
//! [`category`] engine, instantiated in [`glpoly`] on the tower of
//! polynomial representation categories of gl_n.

pub mod error;
pub mod category;
pub mod formal_sum;
pub mod glpoly;
pub mod lambda;
pub mod linalg;
pub mod partition;
pub mod schur;
pub mod symring;

pub use error::{Error, Result};
pub use formal_sum::FormalSum;
pub use lambda::{lift, CompatibleSequence, SymFunc};
pub use partition::Partition;
pub use symring::{Basis, ExplicitPoly, TruncatedSymElem};
