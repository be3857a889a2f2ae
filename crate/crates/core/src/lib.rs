//! Cantor-set constructions of badly approximable points on planar curves.
//!
//! The pipeline: derive construction constants ([`params`]), enumerate the
//! dangerous neighbourhoods of rational lines near a curve ([`dangerous`]),
//! split-and-remove through the generic engine ([`cantor`]) to get nested
//! survivor collections ([`survivors`]), then certify survivors with brute-force
//! Diophantine searches ([`verifier`]).

pub mod cantor;
pub mod curve;
pub mod dangerous;
pub mod error;
pub mod io;
pub mod params;
pub mod real;
pub mod survivors;
pub mod verifier;

pub use error::{Error, Result};
pub use real::{Precision, Rational, Real};
