use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primes::small_primes_for;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Prime factorization of a positive integer: `(prime, exponent)` pairs with
/// strictly increasing primes. The empty list is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    /// Multiplies the factorization back out. `None` on `u64` overflow.
    pub fn value(&self) -> Option<u64> {
        self.pairs
            .iter()
            .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical factorization of `n >= 1` by trial division.
pub fn factorize(n: u64, limits: &Limits) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("factorize requires n >= 1".into()));
    }
    if n > limits.factor_limit {
        return Err(Error::bound("factorization input", n, limits.factor_limit));
    }
    let mut rest = n;
    let mut pairs = Vec::new();
    for p in small_primes_for(n) {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

/// Factorization of `|n|` for a nonzero big integer within the factor limit.
pub fn factorize_abs(n: &BigInt, limits: &Limits) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let small = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::bound("factorization input", n.abs(), limits.factor_limit))?;
    factorize(small, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let limits = Limits::default();
        assert_eq!(factorize(12, &limits).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1, &limits).unwrap().is_one());
        assert_eq!(
            factorize(9797, &limits).unwrap().pairs(),
            &[(97, 1), (101, 1)]
        );
        assert!(matches!(factorize(0, &limits), Err(Error::Domain(_))));
    }

    #[test]
    fn reconstructs_every_n_up_to_1e5() {
        let limits = Limits::default();
        for n in 1..=100_000u64 {
            let f = factorize(n, &limits).unwrap();
            assert_eq!(f.value(), Some(n));
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.pairs().iter().all(|&(p, e)| e >= 1 && crate::is_prime(p)));
        }
    }

    #[test]
    fn large_inputs() {
        let limits = Limits::default();
        let f = factorize(999_999_999_989, &limits).unwrap();
        assert_eq!(f.pairs(), &[(999_999_999_989, 1)]);
        let f = factorize(1_000_000_000_000, &limits).unwrap();
        assert_eq!(f.pairs(), &[(2, 12), (5, 12)]);
        assert!(factorize(1_000_000_000_001, &limits).is_err());
    }

    #[test]
    fn display() {
        let limits = Limits::default();
        assert_eq!(
            factorize(360, &limits).unwrap().to_string(),
            "2^3 * 3^2 * 5"
        );
        assert_eq!(factorize(1, &limits).unwrap().to_string(), "1");
    }
}
