//! Representations of compact Lie algebras and left-invariant metrics of
//! negative Ricci curvature on the associated solvable extensions.

// Index loops mirror the index notation of the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod approaches;
pub mod config;
pub mod error;
pub mod exact;
pub mod metric;
pub mod repbuild;
pub mod repweights;
pub mod rootsys;

pub use error::{Error, Result};
