//! Exact intersection theory and volume calculus on fan subdivisions of a
//! smooth surface germ.
//!
//! Everything is computed in arbitrary-precision rational arithmetic: lattice
//! fans over the first quadrant, intersection matrices of the torus-invariant
//! curves, the admissible-parameter sets `SNP_n`, volume defect functions,
//! weighted blow-up factorizations, and nested certificates for iterated
//! accumulation points of the volume set.

pub mod accumulation;
pub mod blowup;
pub mod cli;
mod error;
pub mod germ;
pub mod intersection;
pub mod lattice;
pub mod rational;
pub mod snp;
pub mod volume;

/// Arbitrary-precision integer used for all lattice coordinates.
pub type Int = num_bigint::BigInt;

/// Exact arbitrary-precision fraction; the universal number type of the crate.
pub type Rational = num_rational::BigRational;

pub use error::Error;
pub use germ::GermParams;
pub use intersection::IntersectionMatrix;
pub use lattice::{Cone2D, LatticeVector, WeightSequence};
pub use snp::SnpVerdict;
pub use volume::VolumeReport;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
