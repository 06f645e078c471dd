//! Exact finite-precision arithmetic in finite extensions of `Q_p`, the
//! coarse-graining of `K^x x K` by the chordal distance, the resulting
//! Bruhat-Tits trees, and the type I-III skeleton of the Berkovich
//! projective line with its hyperbolic path metric.
//!
//! The crate is organised bottom-up:
//!
//! * [`padic`]: extension specs, residue fields, elements, digit expansions.
//! * [`chordal`]: the chordal distance, the relations `~` and `~_m`, class
//!   representatives.
//! * [`tree`]: tree nodes, navigation, refinement layers, slices and export.
//! * [`berkovich`]: the exact exponent field `Q + Q*sqrt2`, disks, the map
//!   `phi`, the metric `rho`, and disk seminorms of polynomials.
//! * [`coarse_grain`]: brute-force audits tying the above together.

pub mod berkovich;
pub mod chordal;
pub mod coarse_grain;
mod error;
pub mod literal;
pub mod padic;
pub mod tree;

pub use error::{Error, ErrorClass, Result};

/// Version tag carried by every JSON document this crate emits.
pub const FORMAT_TAG: &str = "ultratree/1";
