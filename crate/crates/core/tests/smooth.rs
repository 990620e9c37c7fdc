use proptest::prelude::*;

use valprime::arith::{normalize, Rational};
use valprime::smooth::{
    density_profile, erdos_defect_bound, minimal_r_for_tail, prime_reciprocal_partial_sum,
    prime_reciprocal_sum_bounds, smooth_members_with, tail_reciprocal_sum, Strategy,
};
use valprime::{primes_up_to, Limits};

#[test]
fn strategies_agree() {
    let limits = Limits::default();
    for r in 0..=5 {
        for n in [1, 2, 10, 999, 100_000] {
            let sieve = smooth_members_with(r, n, Strategy::Sieve, &limits).unwrap();
            let dfs = smooth_members_with(r, n, Strategy::Enumerate, &limits).unwrap();
            assert_eq!(sieve, dfs, "r={r} n={n}");
            assert_eq!(sieve.members[0], 1);
        }
    }
}

#[test]
fn partial_sums_increase_over_primes() {
    let limits = Limits::default();
    let primes = primes_up_to(2000, &limits).unwrap();
    let mut last = Rational::from_integer(0.into());
    for p in primes {
        let s = prime_reciprocal_partial_sum(p, &limits).unwrap();
        assert!(s > last, "not increasing at {p}");
        last = s;
    }
    let b = prime_reciprocal_sum_bounds(2000, &limits).unwrap();
    assert!(b.lower <= last && last <= b.upper);
}

#[test]
fn enclosures_contain_exact_sums() {
    let limits = Limits::default();
    for bound in [10, 1000, 100_000] {
        let exact = prime_reciprocal_partial_sum(bound, &limits).unwrap();
        let b = prime_reciprocal_sum_bounds(bound, &limits).unwrap();
        assert!(b.lower <= exact && exact <= b.upper, "{bound}");
    }
}

#[test]
fn minimal_r_grows_across_each_decade() {
    let limits = Limits::default();
    let half = normalize(1, 2).unwrap();
    let rs: Vec<usize> = (2..=7)
        .map(|e| minimal_r_for_tail(10u64.pow(e), &half, &limits).unwrap())
        .collect();
    assert!(rs.windows(2).all(|w| w[0] < w[1]), "{rs:?}");
    // inside one decade it never drops
    let mut prev = 0;
    for b in (100..=1000).step_by(50) {
        let r = minimal_r_for_tail(b, &half, &limits).unwrap();
        assert!(r >= prev, "drop at {b}");
        prev = r;
    }
}

#[test]
fn minimal_r_definition() {
    let limits = Limits::default();
    let half = normalize(1, 2).unwrap();
    for b in [50, 1000, 20_000] {
        let r = minimal_r_for_tail(b, &half, &limits).unwrap();
        assert!(tail_reciprocal_sum(r, b, &limits).unwrap() < half);
        assert!(r == 0 || tail_reciprocal_sum(r - 1, b, &limits).unwrap() >= half);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_at_least_one_minus_tail(r in 0usize..=6, n in 1u64..=20_000) {
        let limits = Limits::default();
        let rep = density_profile(r, &[n], &limits).unwrap();
        let row = &rep.checkpoints[0];
        let one = Rational::from_integer(1.into());
        prop_assert_eq!(&row.lower_bound, &(one - tail_reciprocal_sum(r, n, &limits).unwrap()));
        prop_assert!(row.ratio >= row.lower_bound);
        prop_assert!(erdos_defect_bound(r, n, &limits).unwrap().holds);
    }
}
