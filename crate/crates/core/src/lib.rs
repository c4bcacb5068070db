//! Numerical toolkit for chordal and radial Loewner evolution of one or two slits.
//!
//! The crate computes half-plane capacity (closed form, zipper welding and
//! Brownian Monte Carlo), the logarithmic mapping radius of boundary slits in
//! the unit disk, converts between polyline slits and driving functions, and
//! ships reproduction drivers for branch-point capacity derivatives, disjoint
//! additivity and a self-similar non-differentiability construction.
//!
//! Module map:
//!
//! - [`geom`]: points, polyline slits, hulls and the disk/half-plane transforms.
//! - [`chordal`]: elementary slit maps, welding, tracing and the forward ODEs.
//! - [`capacity`]: half-plane capacity estimators.
//! - [`radial`]: radial Loewner flow, mapping radius and the chordal–radial bridge.
//! - [`experiments`]: reproduction drivers producing tables and bound checks.
//! - [`cli`]: configuration parsing and the `loewner` command runner.

pub mod capacity;
pub mod chordal;
pub mod cli;
mod error;
pub mod experiments;
pub mod geom;
pub(crate) mod numeric;
pub mod radial;

pub use error::{Error, Result};
pub use geom::{Chart, ComplexPoint, Hull, PolylineSlit};
