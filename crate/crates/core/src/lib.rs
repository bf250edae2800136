//! Distributional calculus for the two-dimensional Schrödinger operator
//! `H = -(ħ²/2m)Δ - αδ` with a point interaction at the origin.
//!
//! The crate is split into
//! - [`specfun`]: `K0`, its logarithmic small-argument form and `γ`,
//! - [`testfn`]: radial bump test functions with analytic derivatives,
//! - [`quad`]: weak pairings by adaptive radial/polar quadrature, mollified
//!   delta families and log-divergence fits,
//! - [`dexpr`]: the distribution-expression language, its rewrite rules and
//!   canonical forms,
//! - [`spectrum`]: the bound-state condition, closed-form energies and the
//!   length-scale indexed family of energies,
//! - [`verify`]: check suites shared by the CLI and the acceptance tests.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod dexpr;
pub mod quad;
pub mod specfun;
pub mod spectrum;
pub mod testfn;
pub mod verify;
