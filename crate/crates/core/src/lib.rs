//! Abel maps for stable curves of compact type.
//!
//! A stable curve of compact type is represented by its dual graph, a tree
//! whose vertices carry genera ([`CurveTree`]). On top of it this crate
//! provides
//!
//! * subcurve and tail combinatorics ([`curve`]),
//! * central, semicentral and principal components and small tails
//!   ([`classify`]),
//! * exact semistability and `X`-quasistability of multidegrees for the
//!   canonical polarization, with enumeration ([`stability`]),
//! * the canonical multidegree sequence `e_d` of the `d`-th Abel map and the
//!   formal per-component divisors of Abel images ([`abel`]),
//! * the comparison of the two Abel maps of a curve with no central
//!   component ([`compare`]),
//! * seeded random curves for testing ([`generator`]).
//!
//! ```
//! use abel_compact::{AbelMap, CurveTree, Multidegree};
//!
//! let tree = CurveTree::build(&[("C1", 4), ("C2", 1)], &[("n", "C1", "C2")]).unwrap();
//! let abel = AbelMap::new(&tree);
//! assert_eq!(abel.e(2), Multidegree::new(vec![2, 0]));
//! ```

pub mod abel;
pub mod classify;
pub mod compare;
pub mod curve;
mod error;
pub mod generator;
pub mod stability;

pub use abel::{AbelMap, DivisorRep, Point, Sign, Symbol, TwistDelta};
pub use classify::Classification;
pub use compare::ComparisonReport;
pub use curve::{CurveTree, Multidegree, RawTree, Subcurve, Tail, ValidationReport, Violation};
pub use error::{Error, Result};
pub use generator::GenSpec;
pub use stability::{Bound, PolarizationData, StabilityVerdict};
