//! Exact computations around valuations on the rationals, smooth numbers and
//! arithmetic progressions.
//!
//! - [`arith`]: big rationals, sieving, factorization
//! - [`places`]: valuations, absolute values, product formula, weak approximation
//! - [`smooth`]: smooth sets `P_r`, the counting bound for their density, reciprocal sums
//! - [`classes`]: exponent classes mod `m` and `m`-th-power-free decomposition
//! - [`ap`]: progression search, exhaustive progression-free sets, per-class scans
//! - [`powers`]: exhaustive checks for progressions of perfect powers
//! - [`pipeline`]: the whole chain for one route at one scale

pub mod ap;
pub mod arith;
pub mod classes;
mod error;
mod limits;
pub mod parse;
pub mod pipeline;
pub mod places;
pub mod powers;
pub mod smooth;

pub use arith::{factorize, is_prime, nth_prime, primes_up_to, Factorization, Rational};
pub use error::{Error, Result};
pub use limits::Limits;
