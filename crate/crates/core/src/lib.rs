//! Exact arithmetic for Frobenius skew-polynomial rings `R[F]` over
//! `F_q`-algebras, their Ore localizations, Cartier modules and the
//! K₀-level invariants attached to them.

pub mod cartier;
pub mod cli;
pub mod error;
pub mod fields;
pub mod fmodules;
pub mod kgroups;
pub mod linalg;
pub mod ore;
pub mod skew;

pub use error::{Error, Result};
