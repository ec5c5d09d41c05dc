//! Exact arithmetic for generalized order-k Fibonacci and Lucas numbers.
//!
//! Four independent evaluation routes are provided and cross-checked:
//! the k-term recurrence ([`sequences`]), companion-matrix powers
//! ([`matrices`]), weighted partition sums ([`partitions`]) and
//! floating-point Binet formulas ([`binet`]). Symbolic generalized
//! Fibonacci/Lucas polynomials live in [`polynomials`], and
//! [`identities`] verifies the relations between the families over
//! parameter grids.

pub mod backends;
pub mod binet;
mod coefficients;
mod error;
pub mod identities;
pub mod matrices;
pub mod partitions;
pub mod polynomials;
mod recurrence;
pub mod sequences;

pub use backends::{evaluate, Backend};
pub use coefficients::CoefficientVector;
pub use error::{Error, Result};
pub use matrices::{ExactMatrix, InfiniteMatrixWindow};
pub use partitions::WeightedPartition;
pub use polynomials::SparsePolynomial;
pub use sequences::{Family, SequenceSpec, TableRow};

pub use num_bigint::BigInt;
