//! Parity symmetries of incompressible Navier–Stokes fields on the periodic box.

pub mod enumerate;
pub mod error;
pub mod experiments;
pub mod field;
pub mod halfspace;
pub mod io;
pub mod nsops;
pub mod selftest;
pub mod spectral;
pub mod symtype;

pub use error::{Error, Result};
pub use field::{Grid3, VectorField};
pub use symtype::{Parity, Part, SymLabel, TypeTuple};
