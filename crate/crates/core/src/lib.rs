//! Finite group classification, Burnside-ring bookkeeping, resolutions of
//! equivariant simplicial complexes and finite-quotient analyses of
//! crystallographic groups.

pub mod burnside;
pub mod catalog;
pub mod classify;
pub mod crystallo;
pub mod error;
pub mod gcomplex;
pub mod group;
pub mod intmat;
pub mod io;
pub mod obligation;
pub mod oliver;
pub mod perm;
pub mod resolution;
pub mod transfer;

pub use error::{Error, Result};
