//! Exact arithmetic-dynamics invariants of one-parameter polynomial families
//! over the rational function field `Q(t)`.
//!
//! The crate is organised in layers:
//!
//! * [`funcfield`]: polynomials and rational functions over `Q`, places of the
//!   projective line, valuations, heights, divisors and an expression parser.
//! * [`polyfam`]: polynomials in `z` with coefficients in `Q(t)`, the critical
//!   normal form, iteration, conjugation and multipliers of periodic points.
//! * [`localdyn`]: per-place expansions and non-archimedean Green's functions.
//! * [`heights`]: critical heights, the S-set, the gap inequality and the
//!   multiplier-degree ratio.
//! * [`families`]: explicit constructions (range families, the sharp family and
//!   its post-critically finite specializations).
//! * [`corpus`]: the seeded random generator of critical tuples.

pub mod corpus;
pub mod error;
pub mod families;
pub mod funcfield;
pub mod heights;
pub mod localdyn;
pub mod polyfam;

pub use error::{Error, Result};
pub use funcfield::{Divisor, Place, Poly, RationalFunction, Q};
pub use polyfam::{CritTuple, FieldPoly, MarkedPeriodicPoint, PolynomialMap};
