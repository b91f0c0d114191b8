//! Exact computation of Tutte, coboundary and characteristic polynomials of
//! hyperplane arrangements whose coefficients live in the cyclotomic integers.
//!
//! Three independent routes to the same polynomials are provided and cross
//! checked against each other:
//!
//! * the definitional sum over central subarrangements ([`arrangement`]),
//! * point counting over finite coefficient rings plus exact interpolation
//!   ([`finite_field`]),
//! * closed multinomial formulas for arrangements invariant under coordinate
//!   permutations, optionally colored by roots of unity ([`symmetric`]).
//!
//! A small toolkit for truncated exponential generating functions with
//! polynomial coefficients ([`egf`]) reproduces the classical product
//! identities satisfied by these polynomial families.
//!
//! All arithmetic is exact: `BigInt` coefficients throughout, `BigRational`
//! where ranks over the cyclotomic field are involved. Core polynomial types
//! are generic over the scalar with concrete aliases exported at the root.

pub mod arrangement;
pub mod bivar;
pub mod cyclotomic;
pub mod egf;
pub mod error;
pub mod finite_field;
pub mod poly;
pub mod symmetric;

pub use arrangement::{Arrangement, Hyperplane};
pub use bivar::BivarPoly;
pub use cyclotomic::{CycElem, NfElem, NumberField, RingCtx, RingSpec};
pub use error::{Error, Result};
pub use poly::{IntPoly, Poly, RatPoly};

/// Sparse exact-integer bivariate polynomial, the universal output type.
pub type IntBivarPoly = BivarPoly<num_bigint::BigInt>;
