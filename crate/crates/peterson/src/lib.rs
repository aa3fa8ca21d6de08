//! Exact Peterson Schubert calculus from Cartan matrices.
//!
//! Everything a finite-type root system knows is encoded in its Cartan
//! matrix, and the structure constants of Peterson Schubert calculus (both
//! equivariant and not) are rational expressions in the entries of inverse
//! Cartan sub-matrices.  This crate computes them exactly:
//!
//! - [`rootsys`] builds and validates Cartan matrices and derives all
//!   root-system data (components, determinants, inverses, positive roots,
//!   exponents, Weyl-group orders) without any type-classification table;
//! - [`exact`] is the arithmetic substrate: big rationals, polynomials in
//!   the equivariant parameter `t`, and fraction-free linear algebra,
//!   generic over the scalar type;
//! - [`operators`] assembles the sparse generator matrices on the subset
//!   lattice and multiplies them into structure constants;
//! - [`basis`] converts between the monomial basis and the Peterson
//!   Schubert class basis;
//! - [`eulerian`] computes mixed Eulerian numbers and volume polynomials
//!   from the non-equivariant generators.
//!
//! All kernel arithmetic is exact; floating point appears only in the
//! numeric convergence verifier.

pub mod basis;
pub mod error;
pub mod eulerian;
pub mod exact;
pub mod io;
pub mod operators;
pub mod rootsys;

/// Arbitrary-precision integer used for determinants and Weyl orders.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar. Always reduced, denominator > 0.
pub type Rat = num_rational::BigRational;
/// Polynomial in the equivariant parameter `t` with exact rational coefficients.
pub type TPoly = exact::Poly<Rat>;
/// Dense matrix of exact rationals.
pub type RatMatrix = exact::Matrix<Rat>;
/// Dense matrix of big integers (fraction-free elimination operates here).
pub type IntMatrix = exact::Matrix<Int>;
/// Dense floating-point matrix, used only by the numeric verifier.
pub type FloatMatrix = exact::Matrix<f64>;

pub use error::Error;
pub use rootsys::{CartanMatrix, DataSnapshot, NodeSet, RootSystem};
