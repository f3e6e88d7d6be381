//! Exact cardinalities of iterated sumsets `hA = {a_1 + .. + a_h : a_i in A}`
//! for point sets `A` in `Z^d` with `d + 2` or `d + 3` elements.
//!
//! * [`d2`]: closed form for sets of `d + 2` points, via their integer affine
//!   dependency.
//! * [`d3`]: lower and upper bounds (exact under a divisibility condition)
//!   for `d + 3` points whose hull is a simplex containing the origin.
//! * [`sumset`]: the brute-force enumerator every formula is checked against,
//!   plus a fit of the eventual polynomial.
//! * [`cone`]: fundamental parallelepipeds and minimal elements of lifted
//!   cones, used to check cone decompositions directly.
//! * [`report`], [`sampling`], [`cli`]: reports, seeded random instances and
//!   the `sumsets` command line.

pub mod binom;
pub mod cli;
pub mod cone;
pub mod d2;
pub mod d3;
pub mod error;
pub mod hull;
pub mod linalg;
pub mod point;
pub mod report;
pub mod sampling;
pub mod sumset;

pub use error::{Error, Result};
pub use point::{Point, PointSet};
