//! Arithmetic progressions in finite integer sets.

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{
    class_representative, exact_root, exponent_class, partition_classes, ExponentClass,
};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Finite set of positive integers with bit-vector membership.
#[derive(Debug, Clone)]
pub struct MemberSet {
    sorted: Vec<u64>,
    bits: BitVec,
}

impl MemberSet {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::with_limits(values, &Limits::default())
    }

    /// Fails if the largest value exceeds `dense_sieve_limit` (bit-vector size).
    pub fn with_limits(values: impl IntoIterator<Item = u64>, limits: &Limits) -> Result<Self> {
        let mut sorted: Vec<u64> = values.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() == Some(&0) {
            return Err(Error::InvalidInput(
                "sets hold positive integers only".into(),
            ));
        }
        let max = sorted.last().copied().unwrap_or(0);
        if max > limits.dense_sieve_limit {
            return Err(Error::bound("set maximum", max, limits.dense_sieve_limit));
        }
        let mut bits = bitvec![0; max as usize + 1];
        for &x in &sorted {
            bits.set(x as usize, true);
        }
        Ok(MemberSet { sorted, bits })
    }

    pub fn contains(&self, x: u64) -> bool {
        usize::try_from(x)
            .ok()
            .and_then(|i| self.bits.get(i).map(|b| *b))
            .unwrap_or(false)
    }

    pub fn values(&self) -> &[u64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn max(&self) -> u64 {
        self.sorted.last().copied().unwrap_or(0)
    }
}

/// `a, a+d, ..., a+(k-1)d` with `d >= 1` and `k >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct APWitness {
    pub a: u64,
    pub d: u64,
    pub k: u32,
}

impl APWitness {
    /// Builds a witness after checking every term lies in `set`.
    pub fn new(a: u64, d: u64, k: u32, set: &MemberSet) -> Result<Self> {
        let w = Self::unchecked(a, d, k)?;
        if !w.lies_in(set) {
            return Err(Error::InvalidInput(format!(
                "progression a={a}, d={d}, k={k} leaves the set"
            )));
        }
        Ok(w)
    }

    pub(crate) fn unchecked(a: u64, d: u64, k: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput(
                "progression difference must be >= 1".into(),
            ));
        }
        if k < 3 {
            return Err(Error::InvalidInput(
                "progression length must be >= 3".into(),
            ));
        }
        if a == 0 {
            return Err(Error::InvalidInput("progression start must be >= 1".into()));
        }
        (k as u64 - 1)
            .checked_mul(d)
            .and_then(|span| span.checked_add(a))
            .ok_or(Error::Overflow("progression terms"))?;
        Ok(APWitness { a, d, k })
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.k as u64).map(move |i| self.a + i * self.d)
    }

    pub fn lies_in(&self, set: &MemberSet) -> bool {
        self.terms().all(|t| set.contains(t))
    }
}

/// Lexicographically smallest `(a, d)` with `a, a+d, a+2d` in the set.
///
/// Scans ordered member pairs `(a, a+d)` and tests `a+2d` by bit lookup.
pub fn find_3ap(set: &MemberSet) -> Option<APWitness> {
    find_kap_pairs(set, 3)
}

/// Same result as [`find_3ap`], scanning pairs `x < z` of equal parity and
/// testing the midpoint.
pub fn find_3ap_midpoint(set: &MemberSet) -> Option<APWitness> {
    let values = set.values();
    values.par_iter().enumerate().find_map_first(|(i, &x)| {
        values[i + 1..]
            .iter()
            .filter(|&&z| (z - x) % 2 == 0)
            .find(|&&z| set.contains(x + (z - x) / 2))
            .map(|&z| APWitness {
                a: x,
                d: (z - x) / 2,
                k: 3,
            })
    })
}

/// Lexicographically smallest witness of length `k >= 3`.
pub fn find_kap(set: &MemberSet, k: u32) -> Result<Option<APWitness>> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "progression length must be >= 3".into(),
        ));
    }
    Ok(find_kap_pairs(set, k))
}

fn find_kap_pairs(set: &MemberSet, k: u32) -> Option<APWitness> {
    let values = set.values();
    let max = set.max();
    let span = k as u64 - 1;
    values.par_iter().enumerate().find_map_first(|(i, &a)| {
        for &b in &values[i + 1..] {
            let d = b - a;
            match d.checked_mul(span).and_then(|s| s.checked_add(a)) {
                Some(last) if last <= max => {}
                _ => break,
            }
            if (2..=span).all(|j| set.contains(a + j * d)) {
                return Some(APWitness { a, d, k });
            }
        }
        None
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApFreeMax {
    pub n: u64,
    pub k: u32,
    pub size: u64,
    /// Lexicographically first subset of maximum size.
    pub witness: Vec<u64>,
}

/// Largest `k`-AP-free subset of `[1, n]`, by branch and bound.
pub fn ap_free_max(n: u64, k: u32, limits: &Limits) -> Result<ApFreeMax> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "progression length must be >= 3".into(),
        ));
    }
    if n > limits.ap_free_limit.min(63) {
        return Err(Error::bound(
            "exhaustive AP-free bound",
            n,
            limits.ap_free_limit.min(63),
        ));
    }
    struct Search {
        n: u64,
        span: u64,
        best: u64,
        best_mask: u64,
    }
    impl Search {
        fn closes_progression(&self, mask: u64, top: u64) -> bool {
            let mut d = 1;
            while self.span * d < top {
                if (1..=self.span).all(|j| mask >> (top - j * d) & 1 == 1) {
                    return true;
                }
                d += 1;
            }
            false
        }

        fn go(&mut self, next: u64, mask: u64, size: u64) {
            if size + (self.n + 1 - next) <= self.best {
                return;
            }
            if next > self.n {
                self.best = size;
                self.best_mask = mask;
                return;
            }
            if !self.closes_progression(mask, next) {
                self.go(next + 1, mask | 1 << next, size + 1);
            }
            self.go(next + 1, mask, size);
        }
    }
    let mut search = Search {
        n,
        span: k as u64 - 1,
        best: 0,
        best_mask: 0,
    };
    // ensure the empty set is recorded for n = 0
    if n == 0 {
        return Ok(ApFreeMax {
            n,
            k,
            size: 0,
            witness: Vec::new(),
        });
    }
    search.go(1, 0, 0);
    let witness: Vec<u64> = (1..=n)
        .filter(|&i| search.best_mask >> i & 1 == 1)
        .collect();
    Ok(ApFreeMax {
        n,
        k,
        size: search.best,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub class: ExponentClass,
    pub witness: APWitness,
}

/// For each non-empty exponent class of `P_r ∩ [1, n]` mod `m`, the
/// lexicographically smallest `k`-term progression inside it, if any.
/// Sorted by class.
pub fn class_ap_scan(
    r: usize,
    n: u64,
    m: u32,
    k: u32,
    limits: &Limits,
) -> Result<Vec<ClassWitness>> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "progression length must be >= 3".into(),
        ));
    }
    if n > limits.dense_sieve_limit {
        return Err(Error::bound("scan range", n, limits.dense_sieve_limit));
    }
    let partition = partition_classes(r, n, m, limits)?;
    if let Some(big) = partition
        .classes
        .iter()
        .find(|c| c.members.len() as u64 > limits.scan_member_budget)
    {
        return Err(Error::bound(
            "class size for scanning",
            big.members.len(),
            limits.scan_member_budget,
        ));
    }
    partition
        .classes
        .par_iter()
        .map(|c| {
            let set = MemberSet::with_limits(c.members.iter().copied(), limits)?;
            Ok(find_kap_pairs(&set, k).map(|witness| ClassWitness {
                class: c.class.clone(),
                witness,
            }))
        })
        .filter_map(|found| found.transpose())
        .collect()
}

/// Divides a progression inside class `v` by the class representative `R`;
/// the quotients are `m`-th powers in progression. Returns
/// `(quotient, root)` for each term.
pub fn ap_to_power_witness(
    witness: &APWitness,
    class: &ExponentClass,
    limits: &Limits,
) -> Result<Vec<(u64, u64)>> {
    APWitness::unchecked(witness.a, witness.d, witness.k)?;
    let rep = class_representative(class, limits)?;
    witness
        .terms()
        .map(|term| {
            let found = exponent_class(term, class.r(), class.m, limits);
            match found {
                Ok(c) if c == *class => {}
                Ok(_) | Err(Error::NotSmooth { .. }) => {
                    return Err(Error::ClassMismatch {
                        term,
                        class: class.to_string(),
                    })
                }
                Err(e) => return Err(e),
            }
            let quotient = term / rep;
            assert_eq!(
                quotient * rep,
                term,
                "representative divides every class member"
            );
            let root = exact_root(quotient, class.m)
                .expect("class member over its representative is an m-th power");
            Ok((quotient, root))
        })
        .collect()
}
