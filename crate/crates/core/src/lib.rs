//! Valuation semigroups of ample divisors on smooth toric surfaces with
//! respect to the flag given by the closure of a one-parameter subgroup.
//!
//! Everything is exact: rationals are arbitrary precision, lattice vectors are
//! `i64`. The modules build on each other bottom-up:
//! polygons, fans and divisors, cones, the semigroup itself, and the
//! finite-generation criterion. `oracle` holds brute-force cross-checks.

pub mod cones;
pub mod criterion;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod polygon;
pub mod rat;
pub mod semigroup;

pub use cones::{Cone2, Decomposition};
pub use criterion::{BadDivisor, FailingCone, FgVerdict, SegmentData, VerdictSource, VertexLift};
pub use error::{Error, Result};
pub use fan::{Fan2, FlagData, ToricDivisor};
pub use lattice::{LatticeVec, MVec, NVec, RatPoint};
pub use par::Execution;
pub use polygon::{Halfplane, RatPolygon};
pub use rat::Rat;
pub use semigroup::{FlagContext, NoBody, SemigroupSlice};
