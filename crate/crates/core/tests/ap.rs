use proptest::prelude::*;

use valprime::ap::{
    ap_free_max, ap_to_power_witness, class_ap_scan, find_3ap, find_3ap_midpoint, find_kap,
    APWitness, MemberSet,
};
use valprime::classes::partition_classes;
use valprime::Limits;

#[test]
fn class_witnesses_are_monotone_in_n() {
    let limits = Limits::default();
    let base = class_ap_scan(4, 200, 2, 3, &limits).unwrap();
    assert!(!base.is_empty());
    for n in [500, 2000, 10_000, 100_000] {
        let wider = class_ap_scan(4, n, 2, 3, &limits).unwrap();
        for found in &base {
            let same = wider.iter().find(|w| w.class == found.class).unwrap();
            assert_eq!(same.witness, found.witness, "N={n}");
        }
    }
}

#[test]
fn class_witnesses_revalidate() {
    let limits = Limits::default();
    for (r, m, k) in [(4, 2, 3), (3, 3, 3), (4, 2, 4), (2, 2, 3)] {
        let part = partition_classes(r, 20_000, m, &limits).unwrap();
        for found in class_ap_scan(r, 20_000, m, k, &limits).unwrap() {
            let members = &part
                .classes
                .iter()
                .find(|c| c.class == found.class)
                .unwrap()
                .members;
            let set = MemberSet::new(members.iter().copied()).unwrap();
            assert!(found.witness.lies_in(&set));
            assert_eq!(find_kap(&set, k).unwrap(), Some(found.witness));
            let powers = ap_to_power_witness(&found.witness, &found.class, &limits).unwrap();
            for (&(quot, root), term) in powers.iter().zip(found.witness.terms()) {
                assert_eq!(root.pow(m), quot);
                assert_eq!(term % quot, 0);
            }
        }
    }
}

#[test]
fn witness_validation() {
    let set = MemberSet::new([1, 3, 5, 8]).unwrap();
    assert!(APWitness::new(1, 2, 3, &set).is_ok());
    assert!(APWitness::new(1, 0, 3, &set).is_err());
    assert!(APWitness::new(3, 5, 2, &set).is_err());
    assert!(APWitness::new(u64::MAX, 1, 3, &set).is_err());
    assert!(APWitness::new(1, 3, 3, &set).is_err());
    assert!(MemberSet::new([0, 1]).is_err());
}

#[test]
fn ap_free_known_values() {
    let limits = Limits::default();
    // r_3(N) for N = 1..=30
    let want = [
        1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9, 9, 9, 9, 10, 10, 11, 11, 11,
        11, 12,
    ];
    for (n, &size) in (1..=30).zip(&want) {
        let got = ap_free_max(n, 3, &limits).unwrap();
        assert_eq!(got.size, size, "N={n}");
        let set = MemberSet::new(got.witness.iter().copied()).unwrap();
        assert_eq!(find_3ap(&set), None);
    }
    assert!(ap_free_max(31, 3, &limits).unwrap_err().is_resource());
}

fn subsets() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(1u64..=300, 0..60).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn strategies_agree(values in subsets()) {
        let set = MemberSet::new(values.iter().copied()).unwrap();
        let pair = find_3ap(&set);
        prop_assert_eq!(pair, find_3ap_midpoint(&set));
        prop_assert_eq!(pair, find_kap(&set, 3).unwrap());
        if let Some(w) = pair {
            prop_assert!(w.lies_in(&set));
        }
    }

    #[test]
    fn longer_progressions_contain_shorter(values in subsets(), k in 4u32..=6) {
        let set = MemberSet::new(values.iter().copied()).unwrap();
        if let Some(w) = find_kap(&set, k).unwrap() {
            prop_assert!(w.lies_in(&set));
            prop_assert!(find_kap(&set, k - 1).unwrap().is_some());
        }
    }
}
