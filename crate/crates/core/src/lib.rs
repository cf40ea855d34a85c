//! Exact solution counts for additive Diophantine equations.
//!
//! Three equation families are covered, each with more than one counting
//! route so that results can be cross-checked:
//!
//! - linear `a1*k1 + ... + ar*kr = n` over non-negative `k` ([`linear`]),
//! - diagonal quadratic `a1*k1^2 + ... + ar*kr^2 = n` over signed `k` ([`quadratic`]),
//! - general additive `g1(k1) + ... + gr(kr) = n` with strictly increasing
//!   `g` ([`general`]).
//!
//! Every route works over exact big integers and rationals. The [`oracle`]
//! module holds brute-force enumerators that share no code with the
//! recursions and are used to validate them.

pub mod bell;
pub mod cli;
mod error;
pub mod general;
pub mod linear;
pub mod oracle;
pub mod quadratic;
pub mod series;
mod table;
pub mod walk;

pub use error::{Error, Result};
pub use general::{GeneralInstance, GeneralPath, TermFunction};
pub use linear::{LinearInstance, LinearPath};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use oracle::Guard;
pub use quadratic::{QuadraticInstance, QuadraticPath};
pub use series::{OpCount, TruncatedSeries};
pub use table::CountTable;
pub use walk::{ScaledDistribution, WalkSpec};
