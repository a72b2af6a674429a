//! Heights on abelian groups and their t-metric versions.
//!
//! A *height* on a multiplicative abelian group is a function into `[0, ∞)`
//! that vanishes at the identity and is symmetric under inversion. Its
//! *t-metric version* takes the infimum of L_t norms of height vectors over
//! all factorizations of an element. This crate computes these objects
//! concretely for the nonzero rationals (Weil height) and for algebraic
//! numbers given an integer minimal polynomial (Mahler measure), and analyzes
//! the map `t ↦ φ_t(α)` as a lower envelope of finitely many L_t norm curves.
//!
//! Module map:
//!
//! - [`norms`] — L_t norms on finitely supported vectors, norm-function
//!   identity testing, height-axiom checks.
//! - [`rational`] — exact arithmetic in ℚ^× in factored form and the Weil
//!   height computed from exponents.
//! - [`factor`] — 64-bit integer factorization (trial division, Miller–Rabin,
//!   Pollard rho).
//! - [`mahler`] — Mahler measure and Weil height of algebraic numbers via
//!   complex root finding on the minimal polynomial.
//! - [`search`] — restricted t-metric heights over finite candidate sets by
//!   branch and bound, with a brute-force oracle.
//! - [`envelope`] — zeros of exponential sums, intersection points of norm
//!   curves, piecewise lower envelopes and the asymptotic minimizer.
//!
//! All heights are in natural-log units throughout.

pub mod envelope;
pub mod factor;
pub mod lattice;
pub mod mahler;
pub mod norms;
pub mod rational;
pub mod search;

mod error;

pub use error::Error;
pub use norms::{lt_norm, same_norm_function, HeightVector, TParam};
pub use rational::{parse_rational, weil_height, FactoredRational, Factorization};
pub use search::{restricted_tmetric, CandidateSet, TMetricResult};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
