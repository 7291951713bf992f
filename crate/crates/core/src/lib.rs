//! Exact invariants of standard graded semigroup rings and their
//! Gorenstein / almost-Gorenstein classification.
//!
//! The arithmetic layer ([`hpoly`], [`cone`], [`linalg`]) is generic over
//! [`ExactInt`], implemented for `i64`, `i128` and `BigInt`. The enumeration
//! layer ([`numsgp`], [`affsgp`], [`graphs`]) works with machine integers and
//! reports overflow as an error.
//!
//! ```
//! use gorlab::NumericalSemigroup;
//!
//! let h = NumericalSemigroup::from_generators(&[3, 5, 7]).unwrap();
//! assert_eq!(h.frobenius(), 4);
//! assert_eq!(h.type_t(), 2);
//! assert!(h.is_almost_gorenstein() && !h.is_symmetric());
//! ```

pub mod affsgp;
pub mod classify;
pub mod cone;
pub mod graphs;
pub mod hpoly;
pub mod linalg;
pub mod numsgp;
pub mod scalar;
pub mod stats;

pub use affsgp::{AffineError, AffineOptions, AffineSemigroup, CanonicalType};
pub use classify::{classify_triple, ClassifyError, InequalityOrdering, Verdict};
pub use cone::Cone;
pub use graphs::{Graph, GraphError, GraphOptions, MultiplicityOneMode, SplitKind, SplitReport};
pub use hpoly::{HPolyError, HPolynomial, SeriesPrefix};
pub use numsgp::{GluingSpec, NumericalSemigroup, SemigroupError};
pub use scalar::{ExactInt, Overflow};
pub use stats::RingStats;

pub type HPolynomial64 = HPolynomial<i64>;
pub type HPolynomial128 = HPolynomial<i128>;
pub type HPolynomialBig = HPolynomial<num_bigint::BigInt>;
pub type Cone64 = Cone<i64>;
pub type ConeBig = Cone<num_bigint::BigInt>;
