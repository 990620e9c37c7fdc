//! Smooth sets `P_r`, the counting bound behind their density, and
//! prime-reciprocal sums.
//!
//! `P_r` is the set of positive integers with no prime factor beyond the
//! `r`-th prime. Every integer in `[1, N]` outside `P_r` is divisible by some
//! `p_j` with `j > r`, so
//!
//! ```text
//! N - #(P_r ∩ [1,N])  <=  Σ_{j>r} floor(N/p_j)  <=  N Σ_{j>r} 1/p_j
//! ```
//!
//! which makes `1 - Σ_{j>r, p_j<=N} 1/p_j` an exact lower bound for the
//! finite ratio `#(P_r ∩ [1,N]) / N`. Limits are never claimed; only these
//! finite quantities are reported.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{self, Rational};
use crate::arith::{first_primes, primes_up_to};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothSet {
    pub r: usize,
    pub bound: u64,
    /// Ascending.
    pub members: Vec<u64>,
}

impl SmoothSet {
    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `#(P_r ∩ [1, n])` for `n <= bound`.
    pub fn count_up_to(&self, n: u64) -> usize {
        self.members.partition_point(|&m| m <= n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Divide the first `r` primes out of every integer in `[1, N]`.
    Sieve,
    /// Enumerate products `p_1^e_1 ... p_r^e_r <= N`.
    Enumerate,
    #[default]
    Auto,
}

/// Above this many allowed primes, `Auto` prefers the dense sieve.
const SPARSE_MAX_R: usize = 16;
const SEGMENT: u64 = 1 << 16;

pub fn smooth_members(r: usize, bound: u64, limits: &Limits) -> Result<SmoothSet> {
    smooth_members_with(r, bound, Strategy::Auto, limits)
}

pub fn smooth_members_with(
    r: usize,
    bound: u64,
    strategy: Strategy,
    limits: &Limits,
) -> Result<SmoothSet> {
    if bound == 0 {
        return Err(Error::Domain("smooth set bound must be >= 1".into()));
    }
    let primes = first_primes(r, limits)?;
    let strategy = match strategy {
        Strategy::Auto if r <= SPARSE_MAX_R || bound > limits.dense_sieve_limit => {
            Strategy::Enumerate
        }
        Strategy::Auto => Strategy::Sieve,
        s => s,
    };
    let members = match strategy {
        Strategy::Sieve => {
            if bound > limits.dense_sieve_limit {
                return Err(Error::bound(
                    "dense sieve range",
                    bound,
                    limits.dense_sieve_limit,
                ));
            }
            sieve_smooth(&primes, bound)
        }
        _ => {
            let mut members = Vec::new();
            let mut overflow = false;
            for_each_smooth(&primes, bound, &mut |n, _| {
                members.push(n);
                if members.len() as u64 > limits.smooth_member_budget {
                    overflow = true;
                    return false;
                }
                true
            });
            if overflow {
                return Err(Error::bound(
                    "smooth member count",
                    format!("> {}", limits.smooth_member_budget),
                    limits.smooth_member_budget,
                ));
            }
            members.sort_unstable();
            members
        }
    };
    Ok(SmoothSet { r, bound, members })
}

fn sieve_smooth(primes: &[u64], bound: u64) -> Vec<u64> {
    let segments: Vec<u64> = (0..bound.div_ceil(SEGMENT)).collect();
    segments
        .par_iter()
        .map(|&s| {
            let lo = s * SEGMENT + 1;
            let hi = ((s + 1) * SEGMENT).min(bound);
            let mut residual: Vec<u64> = (lo..=hi).collect();
            for &p in primes {
                let mut m = lo.div_ceil(p) * p;
                while m <= hi {
                    let slot = &mut residual[(m - lo) as usize];
                    while *slot % p == 0 {
                        *slot /= p;
                    }
                    m += p;
                }
            }
            residual
                .iter()
                .enumerate()
                .filter(|(_, &rest)| rest == 1)
                .map(|(i, _)| lo + i as u64)
                .collect::<Vec<_>>()
        })
        .flatten_iter()
        .collect()
}

/// Depth-first walk over every `n = ∏ primes[i]^e_i <= bound`, handing the
/// callback `n` and its exponent vector. Stops early if the callback returns
/// false. Order is not sorted.
pub(crate) fn for_each_smooth(
    primes: &[u64],
    bound: u64,
    visit: &mut dyn FnMut(u64, &[u32]) -> bool,
) {
    fn walk(
        primes: &[u64],
        from: usize,
        n: u64,
        bound: u64,
        exps: &mut Vec<u32>,
        visit: &mut dyn FnMut(u64, &[u32]) -> bool,
    ) -> bool {
        if !visit(n, exps) {
            return false;
        }
        for i in from..primes.len() {
            let mut m = n;
            let mut e = 0;
            loop {
                m = match m.checked_mul(primes[i]) {
                    Some(m) if m <= bound => m,
                    _ => break,
                };
                e += 1;
                exps[i] = e;
                let keep_going = walk(primes, i + 1, m, bound, exps, visit);
                if !keep_going {
                    exps[i] = 0;
                    return false;
                }
            }
            exps[i] = 0;
            if e == 0 {
                // primes ascend: later ones overshoot too
                break;
            }
        }
        true
    }
    let mut exps = vec![0u32; primes.len()];
    if bound >= 1 {
        walk(primes, 0, 1, bound, &mut exps, visit);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectBound {
    pub r: usize,
    pub n: u64,
    /// `N - #(P_r ∩ [1,N])`.
    pub defect: u64,
    /// `Σ_{j>r, p_j<=N} floor(N/p_j)`.
    pub bound: u64,
    pub holds: bool,
}

/// The counting inequality at one `(r, N)`, computed directly.
pub fn erdos_defect_bound(r: usize, n: u64, limits: &Limits) -> Result<DefectBound> {
    let count = smooth_members(r, n, limits)?.len() as u64;
    let primes = primes_up_to(n, limits)?;
    let bound: u64 = primes.iter().skip(r).map(|&p| n / p).sum();
    let defect = n - count;
    Ok(DefectBound {
        r,
        n,
        defect,
        bound,
        holds: defect <= bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectScan {
    pub r: usize,
    pub max_n: u64,
    /// Number of `N` values checked, `1..=max_n`.
    pub checked: u64,
    /// Smallest `bound - defect` seen over all `N`.
    pub min_slack: u64,
    pub first_failure: Option<DefectBound>,
}

/// The counting inequality at every `N` in `[1, max_n]` for one `r`.
///
/// Runs incrementally: going from `N-1` to `N`, the bound grows by the number
/// of primes `p_j` (`j > r`) dividing `N`, and the defect grows by one exactly
/// when that number is positive.
pub fn erdos_defect_scan(r: usize, max_n: u64, limits: &Limits) -> Result<DefectScan> {
    if max_n == 0 {
        return Err(Error::Domain("scan bound must be >= 1".into()));
    }
    if max_n > limits.dense_sieve_limit {
        return Err(Error::bound(
            "defect scan range",
            max_n,
            limits.dense_sieve_limit,
        ));
    }
    let primes = primes_up_to(max_n, limits)?;
    let mut large_factors = vec![0u8; max_n as usize + 1];
    for &p in primes.iter().skip(r) {
        let mut m = p;
        while m <= max_n {
            large_factors[m as usize] += 1;
            m += p;
        }
    }
    let (mut defect, mut bound) = (0u64, 0u64);
    let mut min_slack = u64::MAX;
    for n in 1..=max_n {
        let k = large_factors[n as usize] as u64;
        bound += k;
        if k > 0 {
            defect += 1;
        }
        if defect > bound {
            return Ok(DefectScan {
                r,
                max_n,
                checked: n,
                min_slack: 0,
                first_failure: Some(DefectBound {
                    r,
                    n,
                    defect,
                    bound,
                    holds: false,
                }),
            });
        }
        min_slack = min_slack.min(bound - defect);
    }
    Ok(DefectScan {
        r,
        max_n,
        checked: max_n,
        min_slack,
        first_failure: None,
    })
}

/// `Σ 1/p` over distinct primes as `(numerator, denominator)` with the
/// denominator the product of the primes. Such a fraction is already in
/// lowest terms, and so is the sum of two of them over disjoint prime sets.
#[derive(Debug, Clone)]
struct ReciprocalSum {
    num: BigInt,
    den: BigInt,
}

impl ReciprocalSum {
    fn empty() -> Self {
        ReciprocalSum {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn of(primes: &[u64]) -> Self {
        match primes.len() {
            0 => Self::empty(),
            1 => ReciprocalSum {
                num: BigInt::one(),
                den: BigInt::from(primes[0]),
            },
            len => {
                let (left, right) = primes.split_at(len / 2);
                let (a, b) = if len > 4096 {
                    rayon::join(|| Self::of(left), || Self::of(right))
                } else {
                    (Self::of(left), Self::of(right))
                };
                a.merge(b)
            }
        }
    }

    fn merge(self, other: Self) -> Self {
        ReciprocalSum {
            num: &self.num * &other.den + &other.num * &self.den,
            den: self.den * other.den,
        }
    }

    fn into_rational(self) -> Rational {
        Rational::new_raw(self.num, self.den)
    }

    /// `1 - self`, still in lowest terms.
    fn one_minus(&self) -> Rational {
        Rational::new_raw(&self.den - &self.num, self.den.clone())
    }
}

fn check_exact(bound: u64, limits: &Limits) -> Result<()> {
    if bound > limits.exact_reciprocal_limit {
        return Err(Error::bound(
            "exact reciprocal-sum bound",
            bound,
            limits.exact_reciprocal_limit,
        ));
    }
    Ok(())
}

/// Exact `Σ 1/p_j` over `j > r` with `p_j <= bound`.
pub fn tail_reciprocal_sum(r: usize, bound: u64, limits: &Limits) -> Result<Rational> {
    check_exact(bound, limits)?;
    let primes = primes_up_to(bound, limits)?;
    let tail = primes.get(r..).unwrap_or(&[]);
    Ok(ReciprocalSum::of(tail).into_rational())
}

/// Exact `Σ 1/p` over primes `p <= bound`.
pub fn prime_reciprocal_partial_sum(bound: u64, limits: &Limits) -> Result<Rational> {
    tail_reciprocal_sum(0, bound, limits)
}

const FIXED_BITS: u32 = 120;

/// `(floor, ceil)` of `2^120 / p`.
fn fixed_reciprocal(p: u64) -> (u128, u128) {
    let one = 1u128 << FIXED_BITS;
    let lo = one / p as u128;
    let hi = if one % p as u128 == 0 { lo } else { lo + 1 };
    (lo, hi)
}

fn fixed_to_rational(x: u128) -> Rational {
    Rational::new(BigInt::from(x), BigInt::one() << FIXED_BITS)
}

/// `floor(q * 2^120)` for `q >= 0`, saturating at `u128::MAX`.
fn rational_to_fixed_floor(q: &Rational) -> u128 {
    let scaled = (q * Rational::from_integer(BigInt::one() << FIXED_BITS)).floor();
    scaled.to_integer().to_u128().unwrap_or(u128::MAX)
}

/// Certified enclosure of `Σ 1/p` over primes `p <= bound` with `2^-120`
/// resolution per term, for bounds beyond exact summation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalBounds {
    pub bound: u64,
    pub primes: u64,
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
}

pub fn prime_reciprocal_sum_bounds(bound: u64, limits: &Limits) -> Result<ReciprocalBounds> {
    let primes = primes_up_to(bound, limits)?;
    let (lo, hi) = primes.iter().fold((0u128, 0u128), |(lo, hi), &p| {
        let (a, b) = fixed_reciprocal(p);
        (lo + a, hi + b)
    });
    Ok(ReciprocalBounds {
        bound,
        primes: primes.len() as u64,
        lower: fixed_to_rational(lo),
        upper: fixed_to_rational(hi),
    })
}

/// Smallest `r >= 0` with `Σ_{j>r, p_j<=bound} 1/p_j <= theta`.
///
/// Tails are accumulated from the top in 120-bit fixed point with one-sided
/// rounding, so each comparison is certified; the rare comparison that the
/// enclosure cannot decide is settled by exact summation.
pub fn minimal_r_for_tail(bound: u64, theta: &Rational, limits: &Limits) -> Result<usize> {
    if theta.is_negative() {
        return Err(Error::InvalidInput("theta must be >= 0".into()));
    }
    let primes = primes_up_to(bound, limits)?;
    let theta_floor = rational_to_fixed_floor(theta);
    let theta_ceil = if fixed_to_rational(theta_floor) == *theta {
        theta_floor
    } else {
        theta_floor.saturating_add(1)
    };
    let (mut lo, mut hi) = (0u128, 0u128);
    let mut r = primes.len();
    while r > 0 {
        let (a, b) = fixed_reciprocal(primes[r - 1]);
        let (next_lo, next_hi) = (lo + a, hi + b);
        let fits = if next_hi <= theta_floor {
            true
        } else if next_lo > theta_ceil {
            false
        } else {
            ReciprocalSum::of(&primes[r - 1..]).into_rational() <= *theta
        };
        if !fits {
            break;
        }
        lo = next_lo;
        hi = next_hi;
        r -= 1;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub n: u64,
    pub count: u64,
    #[serde(with = "rational::serde_str")]
    pub ratio: Rational,
    /// `1 - Σ_{j>r, p_j<=n} 1/p_j`.
    #[serde(with = "rational::serde_str")]
    pub lower_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub r: usize,
    pub checkpoints: Vec<DensityRow>,
    /// The counting lower bound at the last checkpoint (the smallest one).
    #[serde(with = "rational::serde_str")]
    pub lower_bound: Rational,
}

impl DensityReport {
    /// Whether every checkpoint ratio meets its exact lower bound.
    pub fn bound_holds(&self) -> bool {
        self.checkpoints
            .iter()
            .all(|row| row.ratio >= row.lower_bound)
    }
}

pub fn density_profile(r: usize, checkpoints: &[u64], limits: &Limits) -> Result<DensityReport> {
    let Some(&max_n) = checkpoints.last() else {
        return Err(Error::InvalidInput("no checkpoints".into()));
    };
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(
            "checkpoints must be ascending and >= 1".into(),
        ));
    }
    check_exact(max_n, limits)?;
    let set = smooth_members(r, max_n, limits)?;
    let primes = primes_up_to(max_n, limits)?;
    let tail_primes = primes.get(r..).unwrap_or(&[]);

    let mut tail = ReciprocalSum::empty();
    let mut consumed = 0;
    let mut rows = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        let upto = tail_primes.partition_point(|&p| p <= n);
        if upto > consumed {
            tail = tail.merge(ReciprocalSum::of(&tail_primes[consumed..upto]));
            consumed = upto;
        }
        let count = set.count_up_to(n) as u64;
        rows.push(DensityRow {
            n,
            count,
            ratio: Rational::new(BigInt::from(count), BigInt::from(n)),
            lower_bound: tail.one_minus(),
        });
    }
    let lower_bound = rows.last().map(|row| row.lower_bound.clone()).unwrap();
    Ok(DensityReport {
        r,
        checkpoints: rows,
        lower_bound,
    })
}

/// `Σ 1/p` over `primes` (distinct), exactly.
pub fn reciprocal_sum_of(primes: &[u64]) -> Rational {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    ReciprocalSum::of(&sorted).into_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::normalize;

    fn q(n: i64, d: i64) -> Rational {
        normalize(n, d).unwrap()
    }

    fn trial_smooth(r: usize, bound: u64) -> Vec<u64> {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
        (1..=bound)
            .filter(|&n| {
                let mut m = n;
                for &p in &primes[..r] {
                    while m % p == 0 {
                        m /= p;
                    }
                }
                m == 1
            })
            .collect()
    }

    #[test]
    fn smooth_examples() {
        let limits = Limits::default();
        for strategy in [Strategy::Sieve, Strategy::Enumerate, Strategy::Auto] {
            let s = |r, n| {
                smooth_members_with(r, n, strategy, &limits)
                    .unwrap()
                    .members
            };
            assert_eq!(s(2, 10), vec![1, 2, 3, 4, 6, 8, 9]);
            assert_eq!(s(0, 7), vec![1]);
            assert_eq!(s(1, 8), vec![1, 2, 4, 8]);
            assert_eq!(s(3, 100).len(), 34);
        }
        assert!(smooth_members(2, 0, &limits).is_err());
    }

    #[test]
    fn strategies_agree_with_trial_division() {
        let limits = Limits::default();
        for r in 0..=5 {
            for bound in [1, 2, 97, 1000, 65_536, 65_537, 100_000] {
                let sieve = smooth_members_with(r, bound, Strategy::Sieve, &limits).unwrap();
                let walk = smooth_members_with(r, bound, Strategy::Enumerate, &limits).unwrap();
                assert_eq!(sieve, walk, "r={r} N={bound}");
                if bound <= 1000 {
                    assert_eq!(sieve.members, trial_smooth(r, bound));
                }
            }
        }
    }

    #[test]
    fn dense_sieve_limit_enforced() {
        let limits = Limits {
            dense_sieve_limit: 1000,
            ..Limits::default()
        };
        assert!(smooth_members_with(2, 1001, Strategy::Sieve, &limits).is_err());
        assert_eq!(
            smooth_members_with(2, 1001, Strategy::Auto, &limits)
                .unwrap()
                .len(),
            trial_smooth(2, 1001).len()
        );
        let tiny = Limits {
            smooth_member_budget: 5,
            ..Limits::default()
        };
        assert!(smooth_members(2, 10, &tiny).is_err());
    }

    #[test]
    fn defect_examples() {
        let limits = Limits::default();
        let d = |r, n| {
            let b = erdos_defect_bound(r, n, &limits).unwrap();
            (b.defect, b.bound, b.holds)
        };
        assert_eq!(d(2, 10), (3, 3, true));
        assert_eq!(d(4, 10), (0, 0, true));
        assert_eq!(d(1, 10), (6, 6, true));
    }

    #[test]
    fn scan_matches_direct_computation() {
        let limits = Limits::default();
        for r in 0..=4 {
            let scan = erdos_defect_scan(r, 3000, &limits).unwrap();
            assert!(scan.first_failure.is_none());
            let mut min_slack = u64::MAX;
            for n in 1..=3000 {
                let direct = erdos_defect_bound(r, n, &limits).unwrap();
                assert!(direct.holds);
                min_slack = min_slack.min(direct.bound - direct.defect);
            }
            assert_eq!(scan.min_slack, min_slack, "r={r}");
        }
    }

    #[test]
    fn tail_examples() {
        let limits = Limits::default();
        assert_eq!(tail_reciprocal_sum(2, 10, &limits).unwrap(), q(12, 35));
        assert_eq!(tail_reciprocal_sum(4, 10, &limits).unwrap(), q(0, 1));
        assert_eq!(tail_reciprocal_sum(0, 10, &limits).unwrap(), q(247, 210));
        assert_eq!(tail_reciprocal_sum(1, 10, &limits).unwrap(), q(71, 105));
        assert_eq!(tail_reciprocal_sum(99, 10, &limits).unwrap(), q(0, 1));
        assert!(tail_reciprocal_sum(0, 1_000_001, &limits).is_err());
    }

    #[test]
    fn tail_agrees_with_naive_rational_sum() {
        let limits = Limits::default();
        let primes = primes_up_to(3000, &limits).unwrap();
        for r in [0, 1, 7, 100, 400] {
            let naive = primes
                .iter()
                .skip(r)
                .fold(q(0, 1), |acc, &p| acc + q(1, p as i64));
            assert_eq!(tail_reciprocal_sum(r, 3000, &limits).unwrap(), naive);
        }
    }

    #[test]
    fn minimal_r_examples() {
        let limits = Limits::default();
        assert_eq!(minimal_r_for_tail(10, &q(1, 2), &limits).unwrap(), 2);
        assert_eq!(minimal_r_for_tail(10, &q(0, 1), &limits).unwrap(), 4);
        assert_eq!(minimal_r_for_tail(10, &q(2, 1), &limits).unwrap(), 0);
        // boundary cases decided by exact fallback: tail(2,10) = 12/35 exactly
        assert_eq!(minimal_r_for_tail(10, &q(12, 35), &limits).unwrap(), 2);
        assert_eq!(minimal_r_for_tail(10, &q(247, 210), &limits).unwrap(), 0);
        assert!(minimal_r_for_tail(10, &q(-1, 2), &limits).is_err());
    }

    #[test]
    fn minimal_r_matches_exact_search() {
        let limits = Limits::default();
        for bound in [2u64, 30, 100, 1000] {
            for theta in [q(1, 10), q(1, 3), q(1, 2), q(1, 1)] {
                let exact = (0..)
                    .find(|&r| tail_reciprocal_sum(r, bound, &limits).unwrap() <= theta)
                    .unwrap();
                assert_eq!(minimal_r_for_tail(bound, &theta, &limits).unwrap(), exact);
            }
        }
    }

    #[test]
    fn partial_sums() {
        let limits = Limits::default();
        assert_eq!(prime_reciprocal_partial_sum(2, &limits).unwrap(), q(1, 2));
        assert_eq!(
            prime_reciprocal_partial_sum(10, &limits).unwrap(),
            q(247, 210)
        );
        assert_eq!(prime_reciprocal_partial_sum(1, &limits).unwrap(), q(0, 1));
        let b = prime_reciprocal_sum_bounds(10, &limits).unwrap();
        assert!(b.lower <= q(247, 210) && q(247, 210) <= b.upper);
    }

    #[test]
    fn density_examples() {
        let limits = Limits::default();
        let rep = density_profile(2, &[10], &limits).unwrap();
        assert_eq!(rep.checkpoints[0].count, 7);
        assert_eq!(rep.checkpoints[0].ratio, q(7, 10));
        assert_eq!(rep.lower_bound, q(23, 35));
        let rep = density_profile(0, &[5], &limits).unwrap();
        assert_eq!(rep.checkpoints[0].count, 1);
        assert_eq!(rep.checkpoints[0].ratio, q(1, 5));
        let rep = density_profile(3, &[100], &limits).unwrap();
        assert_eq!(rep.checkpoints[0].count, 34);

        let rep = density_profile(2, &[10, 100, 1000, 1000], &limits).unwrap();
        assert!(rep.bound_holds());
        assert_eq!(
            rep.checkpoints.iter().map(|r| r.count).collect::<Vec<_>>(),
            vec![7, 20, 40, 40]
        );
        for row in &rep.checkpoints {
            let want = q(1, 1) - tail_reciprocal_sum(2, row.n, &limits).unwrap();
            assert_eq!(row.lower_bound, want);
        }

        assert!(density_profile(2, &[], &limits).is_err());
        assert!(density_profile(2, &[10, 5], &limits).is_err());
        assert!(density_profile(2, &[0, 5], &limits).is_err());
    }
}
