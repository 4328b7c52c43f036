//! Finite n-exangulated categories built from bound quiver algebras, their
//! localizations by a class of morphisms, and mechanical checks of the
//! axioms involved.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod exangulated;
pub mod localization;
pub mod quiverrep;

pub use error::{Error, Result};
