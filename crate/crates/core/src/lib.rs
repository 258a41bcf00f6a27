//! Exit laws of absorbed lattice walks in x-monotone regions and the log-concavity of those laws.
//!
//! * [`lattice`]: regions, paths, shifts and projections.
//! * [`walker`]: exact exit distributions, infinite strips, monotone crossings, log-concavity checks.
//! * [`injection`]: the path-pair injection, loop erasure, key intersections and the exhaustive harness.
//! * [`paths`]: enumeration oracles and exact counters (Dyck, Schröder, Delannoy, ballot, binomial).
//! * [`mc`]: seeded Monte Carlo cross-checks.
//! * [`fixtures`]: seeded random regions, models and counting instances.

pub mod error;
pub mod fixtures;
pub mod injection;
pub mod lattice;
pub mod linalg;
pub mod mc;
pub mod paths;
pub mod scalar;
pub mod walker;

pub use error::{Error, Result};
pub use lattice::{LatticePath, LatticePoint, Region, Step, StepSet};
pub use scalar::Scalar;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Rational = BigRational;
pub type ExactModel = walker::TransitionModel<Rational>;
pub type FloatModel = walker::TransitionModel<f64>;
pub type ExactDistribution = walker::ExitDistribution<Rational>;
pub type FloatDistribution = walker::ExitDistribution<f64>;
