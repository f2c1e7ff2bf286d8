//! Exact cyclotomic linear algebra for low-dimensional braid group
//! representations, with a congruence-subgroup decision procedure for the
//! modular representations they induce.

pub mod braid;
pub mod catalog;
pub mod closure;
pub mod congruence;
pub mod cyclotomic;
pub mod error;
pub mod hsu;
pub mod linear;
pub mod pipeline;
pub mod suite;
pub mod words;

pub use cyclotomic::{CycNum, RootFraction};
pub use error::{Error, Result};
pub use linear::CycMatrix;
