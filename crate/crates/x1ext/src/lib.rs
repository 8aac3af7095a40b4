//! Rational extensions of the radial oscillator and Scarf I potentials whose
//! bound states are built from Laguerre- and Jacobi-type X1 exceptional
//! orthogonal polynomials, together with the numerical oracles (tridiagonal
//! eigensolver, quadrature, finite differences) used to verify their spectra,
//! isospectrality, node counts, orthogonality and shape invariance.

// `!(x > 0.0)`-style guards are deliberate: they reject NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod models;
pub mod numerics;
pub mod pct;
pub mod susy;
pub mod xpoly;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
