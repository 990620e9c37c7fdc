//! Exact arithmetic substrate: rationals, prime sieving, factorization.

mod factor;
mod primes;
pub mod rational;

pub use factor::{factorize, factorize_abs, Factorization};
pub use primes::{first_primes, is_prime, nth_prime, primes_up_to};
pub use rational::{normalize, parse_rational, Rational};
