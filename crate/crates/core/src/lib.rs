//! Exact polyhedral convex analysis.
//!
//! The crate decides, in rational arithmetic, whether a critical point `x` of
//! a perturbed function `f - ⟨v, ·⟩` is nondegenerate (`v ∈ ri ∂f(x)`), and
//! runs seeded experiments showing that for randomly drawn `v` the minimizer
//! is unique and nondegenerate.
//!
//! Modules, bottom up:
//! - [`exact`]: rationals, vectors, matrices, linear solves and rank.
//! - [`lp`]: Bland-rule simplex with dual, ray and Farkas certificates.
//! - [`geometry`]: polyhedra, generated sets, normal cones, relative
//!   interior tests, exposed faces.
//! - [`subdiff`]: polyhedral functions, subdifferentials, the certifier.
//! - [`prox`]: exact proximal maps, the transport map, critical points of
//!   `g - (ρ/2)|·|²`.
//! - [`genericity`]: Monte Carlo and adversarial experiments.
//! - [`problem`]: the problem file format.

pub mod error;
pub mod exact;
pub mod genericity;
pub mod geometry;
pub mod lp;
pub mod problem;
pub mod prox;
pub mod subdiff;

pub use error::{Error, Result};
pub use exact::{RatMatrix, RatVector, Rational};
