//! Central configurations of the isosceles-trapezoid four-body problem.
//!
//! Two equal masses `M` sit on a base of unit length, two equal masses `m`
//! on a parallel top side of length `alpha` at height `beta`. The crate
//! provides:
//!
//! - [`geometry`]: the configuration and its distance cubes `a`, `b`;
//! - [`mass_solver`]: closed-form masses, the sign functions `f1, f2, f3`
//!   and an independent 2x2 linear solve;
//! - [`cc_oracle`]: a generic planar N-body central-configuration check;
//! - [`regions`]: exact and approximate region boundaries, raster grids and
//!   a domain audit of the approximate boundary formulas;
//! - [`dynamics`]: RK4 integration and rigid-rotation metrics;
//! - [`cli`]: the `trapcc` command-line front end.

// Validation is written as `!(x > 0.0)` so that NaN fails it as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cc_oracle;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod mass_solver;
pub mod regions;

pub use error::{DynamicsError, GeometryError, MassError, OracleError, PublishedFormulaError, RegionError};
pub use geometry::{PlanarPoint, TrapezoidParams};
pub use mass_solver::{MassSolution, RegionLabel};
