//! Numerical checks of contour integral inequalities for harmonic functions in the unit disk.
//!
//! Both sides of each inequality are evaluated for concrete harmonic functions and convex
//! curves inside the unit disk, compared against the sharp constants, and collected into
//! structured reports.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curves;
pub mod error;
pub mod extremal;
pub mod harmonic;
pub mod inequalities;
pub mod par;
pub mod quadrature;
pub mod report;
pub mod suite;

pub use error::{LabError, Result};

/// Library version embedded in counterexample records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
