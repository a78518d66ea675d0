//! Exact arithmetic on elliptic function fields and decision procedures
//! for telescoping under translation by a non-torsion point.
//!
//! The central question: given a function f on an elliptic curve E and a
//! point s of infinite order, does f = tau(g) - g for some function g,
//! where tau is composition with translation by s?  The library answers
//! this exactly, producing either a witness g or a certificate of
//! obstruction built from orbital residues, and layers several related
//! decision procedures on top (dimension counts for the summable part of
//! a Riemann-Roch space, additive and multiplicative integrability of
//! first-order difference systems, gauge equivalence to constants).
//!
//! Everything is exact: scalars are rationals or rational functions over
//! a prime field, curves are general Weierstrass models, and all series
//! expansions carry explicit precision windows with pessimistic error
//! propagation.

pub mod error;
pub mod field;
pub mod poly;
pub mod ratfn;
pub mod series;
pub mod curve;
pub mod divisor;
pub mod fnfield;
pub mod linalg;
pub mod localexp;
pub mod orbits;
pub mod pinning;
pub mod roots;
pub mod rr;
pub mod ancillary;
pub mod residues;
pub mod textio;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use field::{FieldConfig, Scalar};
pub use curve::{CurvePoint, CurveSpec};

/// Crate version, stamped into report headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
