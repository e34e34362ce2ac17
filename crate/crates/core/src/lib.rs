//! Exact computations on germs of irreducible plane curves.
//!
//! The crate resolves a branch by point blow-ups, derives its proximity data,
//! evaluates the generic dimension of its analytic moduli, and studies the
//! module of logarithmic one-forms of the branch together with a direction of
//! smooth transverse components.
//!
//! All arithmetic is over exact rationals. Power series carry an explicit
//! truncation order, and any question that cannot be decided within that
//! order is reported as [`Error::Truncation`] instead of being guessed.

pub mod curve;
pub mod error;
pub mod exact;
pub mod moduli;
pub mod resolution;
pub mod saito;

pub use error::{Error, Result};
