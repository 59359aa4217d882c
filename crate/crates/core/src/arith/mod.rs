//! Exact and certified arithmetic shared by the rest of the crate.

pub mod cf;
pub mod interval;
pub mod jacobi;
mod log;
pub mod prime;
pub mod rigor;

pub use cf::{
    cf_expand, cf_expand_log_ratio, cf_expand_with, cf_of_rational, log_ratio_exact,
    ContinuedFractionExpansion, Convergent,
};
pub use interval::{log_interval, ratio, IntervalReal};
pub use jacobi::jacobi;
pub use log::LOG_GUARD_BITS;
pub use prime::{is_prime, pow_mod, primes_below};
pub use rigor::{audit, AuditSnapshot, Certified, PrecisionPolicy};
