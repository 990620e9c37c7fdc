//! Segmented sieve of Eratosthenes over odd numbers.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Odd numbers per segment; one byte per odd number.
const SEGMENT_ODDS: u64 = 1 << 17;

/// Primes below this bound are computed once and shared.
const CACHE_BOUND: u64 = 1_000_000;

fn cached_primes() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| sieve(CACHE_BOUND))
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64, limits: &Limits) -> Result<Vec<u64>> {
    limits.check_sieve(bound)?;
    if bound <= CACHE_BOUND {
        let cache = cached_primes();
        let end = cache.partition_point(|&p| p <= bound);
        return Ok(cache[..end].to_vec());
    }
    Ok(sieve(bound))
}

/// The `j`-th prime, 1-indexed (`p_1 = 2`).
pub fn nth_prime(j: usize, limits: &Limits) -> Result<u64> {
    if j == 0 {
        return Err(Error::Domain("prime index starts at 1".into()));
    }
    let cache = cached_primes();
    if j <= cache.len() {
        return Ok(cache[j - 1]);
    }
    let bound = nth_prime_upper_bound(j);
    if bound > limits.sieve_limit {
        return Err(Error::bound(
            "nth prime sieve bound",
            bound,
            limits.sieve_limit,
        ));
    }
    sieve(bound)
        .get(j - 1)
        .copied()
        .ok_or_else(|| Error::bound("prime index", j, "sieve range"))
}

/// The first `count` primes.
pub fn first_primes(count: usize, limits: &Limits) -> Result<Vec<u64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let cache = cached_primes();
    if count <= cache.len() {
        return Ok(cache[..count].to_vec());
    }
    let last = nth_prime(count, limits)?;
    let mut primes = primes_up_to(last, limits)?;
    primes.truncate(count);
    Ok(primes)
}

/// Rosser's bound `p_j < j (ln j + ln ln j)` for `j >= 6`.
fn nth_prime_upper_bound(j: usize) -> u64 {
    if j < 6 {
        return 13;
    }
    let x = j as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
}

/// Deterministic primality by trial division. Suitable for `n <= factor_limit`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in small_primes_for(n) {
        if p * p > n {
            return true;
        }
        if n % p == 0 {
            return n == p;
        }
    }
    true
}

/// Primes up to at least `sqrt(n)`.
pub(crate) fn small_primes_for(n: u64) -> Box<dyn Iterator<Item = u64>> {
    let root = n.isqrt();
    if root <= CACHE_BOUND {
        Box::new(cached_primes().iter().copied())
    } else {
        Box::new(sieve(root + 1).into_iter())
    }
}

fn sieve(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let root = bound.isqrt();
    let base = simple_sieve(root);
    // odd numbers 2i+1 for i in [1, odd_count)
    let odd_count = (bound - 1) / 2 + 1;
    let segments: Vec<u64> = (0..odd_count.div_ceil(SEGMENT_ODDS)).collect();
    let chunks: Vec<Vec<u64>> = segments
        .par_iter()
        .map(|&s| {
            let lo = (s * SEGMENT_ODDS).max(1);
            let hi = ((s + 1) * SEGMENT_ODDS).min(odd_count);
            sieve_segment(lo, hi, &base)
        })
        .collect();
    let mut primes = Vec::with_capacity(chunks.iter().map(Vec::len).sum::<usize>() + 1);
    primes.push(2);
    for chunk in chunks {
        primes.extend(chunk);
    }
    primes
}

/// Primes among the odd numbers `2i+1` for `i` in `[lo, hi)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut composite = vec![false; (hi - lo) as usize];
    let top = 2 * hi - 1;
    for &p in base.iter().skip(1) {
        if p * p > top {
            break;
        }
        // first odd multiple of p that is >= max(p*p, 2*lo+1)
        let start_val = (p * p).max((2 * lo + 1).div_ceil(p) * p);
        let start_val = if start_val % 2 == 0 {
            start_val + p
        } else {
            start_val
        };
        let mut i = (start_val - 1) / 2;
        while i < hi {
            composite[(i - lo) as usize] = true;
            i += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(k, _)| 2 * (lo + k as u64) + 1)
        .collect()
}

fn simple_sieve(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(bound: u64) -> Vec<u64> {
        (2..=bound)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn small_examples() {
        let limits = Limits::default();
        assert_eq!(primes_up_to(10, &limits).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1, &limits).unwrap().is_empty());
        assert!(primes_up_to(0, &limits).unwrap().is_empty());
        let hundred = primes_up_to(100, &limits).unwrap();
        assert_eq!(hundred.len(), 25);
        assert_eq!(*hundred.last().unwrap(), 97);
    }

    #[test]
    fn agrees_with_trial_division() {
        let oracle = trial_division_primes(10_000);
        assert_eq!(primes_up_to(10_000, &Limits::default()).unwrap(), oracle);
        // uncached path, crossing many segment boundaries
        for bound in [2, 3, 4, 9, 262_143, 262_144, 262_145] {
            let want: Vec<u64> = if bound <= 10_000 {
                trial_division_primes(bound)
            } else {
                cached_primes()
                    .iter()
                    .copied()
                    .filter(|&p| p <= bound)
                    .collect()
            };
            assert_eq!(sieve(bound), want, "bound {bound}");
        }
    }

    #[test]
    fn segmented_matches_cache_above_one_segment() {
        let big = sieve(CACHE_BOUND);
        assert_eq!(big, cached_primes());
        assert_eq!(big.len(), 78_498);
    }

    #[test]
    fn nth_prime_examples() {
        let limits = Limits::default();
        assert_eq!(nth_prime(1, &limits).unwrap(), 2);
        assert_eq!(nth_prime(4, &limits).unwrap(), 7);
        assert_eq!(nth_prime(25, &limits).unwrap(), 97);
        assert!(nth_prime(0, &limits).is_err());
        assert_eq!(nth_prime(78_499, &limits).unwrap(), 1_000_003);
    }

    #[test]
    fn bound_exceeded() {
        let limits = Limits {
            sieve_limit: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            primes_up_to(1001, &limits),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(nth_prime(10_000_000, &limits).is_err());
    }

    #[test]
    fn primality() {
        let oracle = trial_division_primes(2000);
        for n in 0..2000 {
            assert_eq!(is_prime(n), oracle.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime(999_999_999_989));
        assert!(!is_prime(999_999_999_987));
    }
}
