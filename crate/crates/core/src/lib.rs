//! Exact computations for spherical actions of quasireductive Lie superalgebras.
//!
//! Everything is computed over the rationals: structure constants, hyperborel
//! subalgebras, highest weight functions on super-polynomial algebras, open-orbit
//! rank certificates over Q(t), Iwasawa decompositions of symmetric pairs, and
//! the coordinate ring of GL(1|1).

pub mod algebra;
pub mod error;
pub mod functions;
pub mod gl11;
pub mod hyperborel;
pub mod linalg;
pub mod orbit;
pub mod rep;
pub mod scalar;
pub mod symmetric;
pub mod table;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational numbers.
pub type Rational = scalar::Rational;
/// Dense matrices over [`Rational`].
pub type QMatrix = linalg::Matrix<Rational>;
