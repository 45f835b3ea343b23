//! Correlation sets of the two-party, two-setting, two-outcome Bell scenario.
//!
//! * [`scenario`]: behaviors `p(ab|xy)` and correlator coordinates `(m, c)`.
//! * [`exactgeom`]: exact V/H polytopes, double description, LP membership.
//! * [`localset`]: deterministic vertices, CHSH facets, relabelings.
//! * [`nosignaling`]: the no-signaling polytope and PR boxes.
//! * [`quantum`]: qubit realizations, CHSH seesaw, Bell operators, witnesses.
//! * [`fourier`]: characteristic functions and the sign-functional bound.
//!
//! Polytope work is exact over [`Rational`]; quantum work uses `f64`.

pub mod claims;
pub mod cli;
pub mod error;
pub mod exactgeom;
pub mod fourier;
pub mod json;
pub mod localset;
pub mod nosignaling;
pub mod quantum;

pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::{Exact, Real, Scalar};
pub use scenario::{Behavior, CorrelatorPoint, Scenario};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type ExactBehavior = Behavior<Rational>;
pub type FloatBehavior = Behavior<f64>;
pub type ExactCorrelators = CorrelatorPoint<Rational>;
pub type FloatCorrelators = CorrelatorPoint<f64>;
pub type ExactVPolytope = exactgeom::VPolytope<Rational>;
pub type ExactHPolytope = exactgeom::HPolytope<Rational>;
pub type QuantumModel64 = quantum::QuantumModel<f64>;
