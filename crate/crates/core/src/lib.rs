//! Exact arithmetic for the coefficient columns of Gaussian binomial
//! coefficients.
//!
//! The crate is organized in four layers:
//!
//! - [`bigpoly`]: a dense polynomial ring over arbitrary-precision integers
//!   with exact division, the product constructors (Pochhammer symbols,
//!   Gaussian polynomials), and the dissection operator.
//! - [`partitions`]: an independent brute-force oracle for restricted
//!   partition counts. It shares no code with the generating-function
//!   engine, so agreement between the two is evidence of correctness.
//! - [`perpgf`]: the engine. For fixed `m` and offset `A` it builds the
//!   rational generating function whose series coefficient at `z^N` is the
//!   number of partitions of `floor(mN/2) - A` into at most `m` parts, each
//!   at most `N`. That sequence is one column through the coefficient
//!   triangle of the Gaussian polynomials, perpendicular to the usual rows.
//! - [`identities`]: machine checks built on the layers above: unimodality,
//!   difference-identity catalog, a prime congruence family, quasipolynomial
//!   extraction, and golden-data verification.

pub mod bigpoly;
pub mod identities;
pub mod partitions;
pub mod perpgf;
