//! Quadratic Gauss sums, theta functions, and the local behaviour of
//! Riemann's non-differentiable function.
//!
//! The crate has five layers:
//!
//! * [`exact`] — integer plumbing: gcd, reduced rationals, the Kronecker
//!   symbol, eighth roots of unity, and a Liouville-function sieve.
//! * [`gauss`] — quadratic Gauss sums: brute-force summation with exact
//!   angle reduction, symbolic closed forms, and oracle checks of the
//!   reciprocity and Landsberg–Schaar identities.
//! * [`series`] — high-precision evaluation of Θ(z), θ(s), F(z), Riemann's
//!   lacunary sine series, Weierstrass cosine/sine series, and the
//!   saw-tooth ψ, each with a certified truncation bound.
//! * [`local`] — local expansion of F at rational points, exact
//!   differentiability classification, derivative and Hölder-exponent
//!   estimation.
//! * [`davenport`] — two-sided numerical diagnostics for the
//!   Davenport–Chowla identity.

pub mod bigcomplex;
pub mod davenport;
pub mod error;
pub mod exact;
pub mod gauss;
pub mod local;
pub mod series;

pub use bigcomplex::BigComplex;
pub use error::{Error, Result};
pub use exact::{EighthRootPhase, LiouvilleTable, ReducedRational};
pub use gauss::ExactGaussSum;
