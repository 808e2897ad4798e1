//! Exact finite-dimensional modules for the universal Askey-Wilson algebra
//! and the universal double affine Hecke algebra of type (C1v, C1).
//!
//! Everything here is `no_std` with `alloc`: scalars, polynomials, dense
//! linear algebra, the module constructors and the structural analysis.
//! File formats, the sweep harness and the command line live in the `dahaw`
//! crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod linalg;
pub mod poly;
pub mod realizations;
pub mod roots;
pub mod scalar;

pub use poly::Poly;
pub use roots::RootSet;
pub use scalar::{Field, FieldElement, Rational, RationalFunction, ScalarError};
