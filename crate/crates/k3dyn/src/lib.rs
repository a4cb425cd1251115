//! Exact lattice-theoretic machinery for rational curve configurations on
//! K3-type surfaces: intersection lattices, elliptic fibration structure,
//! isometry dynamics with certified entropy, and Salem polynomial
//! certification.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactla`]: arbitrary-precision matrices, lattices, kernels, short
//!   vectors, characteristic and integer polynomials. No floating point.
//! * [`curveconf`]: named curve configurations (vertices with
//!   self-intersections, weighted intersection edges), their Gram matrices,
//!   and the rank-reduced lattice model every later computation runs in.
//! * [`fibration`]: Kodaira fiber classification of square-zero divisors,
//!   sections, vertical root systems, trivial lattices, the orthogonal
//!   section projection, and Mordell-Weil ranks.
//! * [`salem`]: reciprocal polynomials, trace polynomials, Sturm root
//!   counting, cyclotomic stripping, and Salem certification.
//! * [`dynamics`]: lattice isometries, Eichler transvections realizing
//!   fiberwise translations, exact spectral radius enclosures, word search
//!   over isometry groups, fixed-vector analysis, and inertia certificates.
//! * [`config`] / [`report`] / [`scenario`]: JSON input schemas, canonical
//!   report serialization, and the built-in end-to-end scenarios.
//!
//! Every certified quantity (spectral radii, root counts, signatures) is
//! computed with exact integer or rational arithmetic; floating point
//! appears only in display strings derived from certified enclosures.

pub mod cli;
pub mod config;
pub mod curveconf;
pub mod dynamics;
pub mod exactla;
pub mod fibration;
pub mod report;
pub mod salem;
pub mod scenario;
