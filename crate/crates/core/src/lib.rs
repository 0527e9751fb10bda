//! Discrete Chebyshev systems and Sturm oscillation toolkit.
//!
//! The crate builds orthogonal polynomial families from three-term
//! recurrences, solves the associated discrete Sturm-Liouville eigenproblem,
//! counts generalized zeros and sign changes of grid functions, certifies
//! T_0 / T_Z systems by determinant sweeps, computes discrete best uniform
//! approximations with alternance certificates, and constructs spectral-gap
//! expansions and Yudin extremal polynomials together with their
//! monotonicity and positivity certificates.
//!
//! All numerics are generic over the scalar type through [`real::Real`]
//! (an IEEE float); the `*64` aliases below fix `f64`, which is what the
//! command-line tool and the acceptance battery use.

// Negated comparisons (`!(x <= bound)`) are deliberate: a NaN produced by a
// degenerate computation must fall on the failing side of every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod battery;
pub mod chebsys;
pub mod classical;
pub mod error;
pub mod gapfourier;
pub mod jsonio;
pub mod minimax;
pub mod oscillation;
pub mod real;
pub mod recurrence;
pub mod spectrum;
pub mod tolerances;
pub mod yudin;

mod linalg;
mod poly;
mod tridiag;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` recurrence tables.
pub type RecurrenceSystem64 = recurrence::RecurrenceSystem<f64>;
/// `f64` derived weights.
pub type DerivedWeights64 = recurrence::DerivedWeights<f64>;
/// `f64` Gauss rule.
pub type Quadrature64 = recurrence::Quadrature<f64>;
/// `f64` eigenproblem solution.
pub type Spectrum64 = spectrum::Spectrum<f64>;
/// `f64` grid function.
pub type DiscreteFunction64 = oscillation::DiscreteFunction<f64>;
/// `f64` function table.
pub type SystemTable64 = chebsys::SystemTable<f64>;
