//! Factorization invariants of noncommutative cancellative semigroups.
//!
//! The crate has three kinds of element sources, all implementing
//! [`Semigroup`]:
//!
//! * finitely presented semigroups ([`presentation::PresentedSemigroup`]),
//! * monoids of zero-sum sequences ([`zero_sum::BlockMonoid`]),
//! * integer matrix semigroups ([`matrix::TriangularSemigroup`],
//!   [`matrix::FullMatrixSemigroup`]).
//!
//! On top of that sit rigid and permutable factorizations, the length,
//! permutable and rigid distances, catenary degrees, divisibility invariants
//! (ω, tame degree, prime-like elements) and the abelianization checks.

pub mod catenary;
pub mod distance;
pub mod divisibility;
pub mod error;
pub mod factorization;
pub mod matrix;
pub mod presentation;
pub mod semigroup;
pub mod transfer;
pub mod zero_sum;

pub use error::{Error, Result};
pub use presentation::{ExplorationBudget, Presentation, PresentedSemigroup, Word};
pub use semigroup::{Certification, Certified, Semigroup};
