//! Certified re-execution of the proof that
//!
//! ```text
//! (5pn² − 1)^x + (p(p − 5)n² + 1)^y = (pn)^z
//! ```
//!
//! has only the solution `(x, y, z) = (1, 1, 2)` for primes `p > 3`,
//! `p ≡ 3 (mod 4)` and `pn ≡ ±1 (mod 5)`, together with the companion search
//! for `(35n² − 1)^x + (14n² + 1)^y = (7n)^z` with `5 | n`.
//!
//! Layers, bottom up:
//!
//! - [`arith`]: interval reals with exact rational endpoints, certified
//!   logarithms, Jacobi symbols, primality, continued fractions.
//! - [`equation`]: the equation family, congruence and Jacobi case
//!   analysis, exact solution checks and a brute-force oracle.
//! - [`bounds`]: explicit linear-form bounds and every numeric ceiling the
//!   argument needs, each re-derived with certified comparisons.
//! - [`reduction`]: per-case elimination through continued-fraction
//!   convergents, with an exact fallback search.
//! - [`campaign`]: the two sweeps, line-delimited reports and checkpoints.
//!
//! Inequalities are never decided on overlapping intervals; see
//! [`arith::rigor`].

pub mod arith;
pub mod bounds;
pub mod campaign;
pub mod equation;
pub mod error;
pub mod reduction;

pub use error::{Error, Result};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
