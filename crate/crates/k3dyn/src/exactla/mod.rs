//! Exact linear algebra over Z and Q.
//!
//! This module is the arithmetic bedrock of the crate: matrices, lattices,
//! kernels and orthogonal complements, short vector enumeration on definite
//! forms, characteristic polynomials, and integer polynomials. Two rules
//! hold everywhere:
//!
//! * no floating point, ever: every number is a [`num_bigint::BigInt`] or a
//!   [`num_rational::BigRational`], and every comparison is exact;
//! * functions are pure: no operation mutates its input.
//!
//! Positive-cone orientation for hyperbolic lattices is not decided here.
//! Callers that care (the dynamics layer) carry a designated vector of
//! positive square alongside the lattice and interpret the cone as the
//! component containing it.

mod charpoly;
mod lattice;
pub mod mat;
mod poly;
mod shortvec;

pub use charpoly::{char_poly, char_poly_int};
pub use lattice::{
    kernel, make_lattice, orthogonal_complement, orthogonal_complement_rat, restricted_gram,
    signature, signature_of_rat, Lattice, Signature,
};
pub use mat::{
    int_kernel, int_vec, primitive_vector, rat_vec_from_int, row_hermite, sign_normalize, IntMat,
    IntVec, RatMat, RatVec, RowLattice,
};
pub use poly::{cyclotomic, gcd_q, Poly};
pub(crate) use poly::ratpoly;
pub use shortvec::short_vectors;

/// Errors from exact linear algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("vector length does not match lattice rank")]
    DimensionMismatch,
    #[error("form is not negative definite")]
    NotNegativeDefinite,
    #[error("short vector target must be negative")]
    NonNegativeTarget,
    #[error("characteristic polynomial has a non-integer coefficient")]
    NonIntegralCharPoly,
    #[error("matrix is singular")]
    SingularMatrix,
}
