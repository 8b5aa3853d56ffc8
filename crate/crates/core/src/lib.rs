//! Minimal-resistance profiles under an area constraint.
//!
//! A profile is a curve from `(0,0)` to `(a,h)` enclosing area `L` below it.
//! Its resistance is `∫ (y')₊³ / (x'² + y'²)`. This crate evaluates that
//! functional exactly on polylines, computes optimal profiles in every
//! parameter regime, and checks the optimal value against a discretized
//! convex relaxation.

pub mod cli;
pub mod curve;
pub mod error;
pub mod fmt;
pub mod grid;
pub mod kernels;
pub mod numeric;
pub mod oracle;
pub mod solver;
pub mod svg;
pub mod verify;

pub use curve::{Params, Point, Polyline};
pub use error::{Error, Result};
pub use grid::GridFunction;
pub use solver::{assemble_solution, OptimalProfile, Regime};
