//! Exact computations on ideal-Shi arrangements.
//!
//! The crate builds crystallographic root systems from Cartan data, enumerates
//! ideals of the root poset, constructs the coned (extended) Shi arrangements
//! `Shi^k_{±Σ}` as integer covectors, and checks freeness and exponent
//! predictions through exact characteristic polynomials and the rank-3
//! multiarrangement criterion.
//!
//! Everything is exact: covectors are primitive integer vectors, subspaces are
//! kept in a canonical integer echelon form with an arbitrary-precision
//! fallback, and polynomials have `BigInt` coefficients.

pub mod arrangement;
pub mod cache;
pub mod charpoly;
pub mod error;
pub mod exec;
pub mod ideals;
pub mod linalg;
pub mod multiarr;
pub mod rootsys;

pub use arrangement::lattice::{IntersectionLattice, LatticeBounds, Subspace};
pub use arrangement::{Arrangement, Covector, Sign};
pub use charpoly::CharPoly;
pub use error::{Error, Result};
pub use exec::Execution;
pub use ideals::{Ideal, LinearExtension};
pub use rootsys::{ExponentMultiset, Family, Root, RootSystem, RootSystemType};
