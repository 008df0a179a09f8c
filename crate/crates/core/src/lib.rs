//! Explicit (2,3)-generating pairs of SL_n(q) for n = 9, 10, 11 and
//! machine-checkable certificates of the facts that make them generate.
//!
//! The linear algebra is written against the [`scalar::Field`] trait, so the
//! same matrix and polynomial code runs over GF(p^k) and over the rationals.
//! The aliases below name the concrete instantiations used throughout.

pub mod arith;
pub mod certify;
pub mod construct;
pub mod error;
pub mod ff;
pub mod matrix;
pub mod meataxe;
pub mod poly;
pub mod scalar;

pub use arith::{Factorization, Natural};
pub use error::{Error, Result};
pub use ff::{FieldElem, GaloisField};
pub use scalar::{Exact, Field, FiniteField};

/// Matrix over a finite field.
pub type GfMat = matrix::Mat<GaloisField>;
/// Polynomial over a finite field.
pub type GfPoly = poly::Poly<GaloisField>;
/// The rationals as a [`Field`].
pub type Rationals = Exact<num_rational::BigRational>;
/// Matrix over the rationals.
pub type QMat = matrix::Mat<Rationals>;
/// Polynomial over the rationals.
pub type QPoly = poly::Poly<Rationals>;
