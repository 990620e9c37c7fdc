//! Exponent classes of smooth numbers.
//!
//! A member `n = p_1^e_1 ... p_r^e_r` of `P_r` falls in class
//! `v = (e_1 mod m, ..., e_r mod m)`. The class minimum
//! `R = p_1^v_1 ... p_r^v_r` is its only `m`-th-power-free member, and every
//! member is `R` times an `m`-th power. So a progression inside one class
//! divides down to a progression of `m`-th powers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, first_primes};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::smooth::for_each_smooth;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentClass {
    pub m: u32,
    pub v: Vec<u32>,
}

impl ExponentClass {
    pub fn new(m: u32, v: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("class modulus must be >= 1".into()));
        }
        if let Some(bad) = v.iter().find(|&&x| x >= m) {
            return Err(Error::InvalidInput(format!(
                "residue {bad} not below modulus {m}"
            )));
        }
        Ok(ExponentClass { m, v })
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }
}

impl fmt::Display for ExponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.v.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub fn exponent_class(n: u64, r: usize, m: u32, limits: &Limits) -> Result<ExponentClass> {
    if m == 0 {
        return Err(Error::Domain("class modulus must be >= 1".into()));
    }
    let factors = factorize(n, limits)?;
    let primes = first_primes(r, limits)?;
    let mut v = vec![0u32; r];
    for &(p, e) in factors.pairs() {
        match primes.binary_search(&p) {
            Ok(i) => v[i] = e % m,
            Err(_) => return Err(Error::NotSmooth { n, r }),
        }
    }
    Ok(ExponentClass { m, v })
}

/// `∏ p_i^v_i`: the least member of the class and its only `m`-th-power-free one.
pub fn class_representative(class: &ExponentClass, limits: &Limits) -> Result<u64> {
    let primes = first_primes(class.r(), limits)?;
    primes.iter().zip(&class.v).try_fold(1u64, |acc, (&p, &e)| {
        p.checked_pow(e)
            .and_then(|pe| acc.checked_mul(pe))
            .ok_or(Error::Overflow("class representative"))
    })
}

/// `n = free_part * root^m` with `free_part` `m`-th-power-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDecomposition {
    pub n: u64,
    pub m: u32,
    pub free_part: u64,
    pub root: u64,
}

pub fn decompose(n: u64, m: u32, limits: &Limits) -> Result<PowerDecomposition> {
    if n == 0 {
        return Err(Error::Domain("decompose requires n >= 1".into()));
    }
    if m < 2 {
        return Err(Error::Domain("decompose requires m >= 2".into()));
    }
    let (mut free_part, mut root) = (1u64, 1u64);
    for &(p, e) in factorize(n, limits)?.pairs() {
        free_part *= p.pow(e % m);
        root *= p.pow(e / m);
    }
    Ok(PowerDecomposition {
        n,
        m,
        free_part,
        root,
    })
}

/// Exact integer `m`-th root, if `n` is a perfect `m`-th power.
pub fn exact_root(n: u64, m: u32) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if n < 2 || m == 1 {
        return Some(n);
    }
    let guess = (n as f64).powf(1.0 / m as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&t| t.checked_pow(m) == Some(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMembers {
    pub class: ExponentClass,
    /// Ascending.
    pub members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub r: usize,
    pub n: u64,
    pub m: u32,
    /// Non-empty classes only, sorted by residue vector.
    pub classes: Vec<ClassMembers>,
    pub densest: (ExponentClass, u64),
}

impl Partition {
    pub fn total_members(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn possible_classes(&self) -> u128 {
        (self.m as u128).pow(self.r as u32)
    }

    pub fn summary(&self, shown: usize, limits: &Limits) -> Result<PartitionSummary> {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                Ok(ClassSummary {
                    v: c.class.v.clone(),
                    count: c.members.len() as u64,
                    representative: class_representative(&c.class, limits)?,
                    first_members: c.members.iter().take(shown).copied().collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionSummary {
            r: self.r,
            n: self.n,
            m: self.m,
            smooth_count: self.total_members() as u64,
            nonempty_classes: self.classes.len() as u64,
            densest_v: self.densest.0.v.clone(),
            densest_count: self.densest.1,
            classes,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub v: Vec<u32>,
    pub count: u64,
    pub representative: u64,
    pub first_members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub r: usize,
    pub n: u64,
    pub m: u32,
    pub smooth_count: u64,
    pub nonempty_classes: u64,
    pub densest_v: Vec<u32>,
    pub densest_count: u64,
    pub classes: Vec<ClassSummary>,
}

/// Splits `P_r ∩ [1, n]` by exponent vectors mod `m`.
///
/// Only non-empty classes are materialized. The densest class is the one with
/// the most members, ties going to the lexicographically smallest vector.
pub fn partition_classes(r: usize, n: u64, m: u32, limits: &Limits) -> Result<Partition> {
    if m == 0 {
        return Err(Error::Domain("class modulus must be >= 1".into()));
    }
    if n == 0 {
        return Err(Error::Domain("partition bound must be >= 1".into()));
    }
    let possible = (m as u128).checked_pow(r as u32);
    if possible.is_none_or(|c| c > limits.class_budget as u128) {
        return Err(Error::ClassBudgetExceeded {
            classes: match possible {
                Some(c) => c.to_string(),
                None => format!("{m}^{r}"),
            },
            budget: limits.class_budget,
        });
    }
    let primes = first_primes(r, limits)?;
    let mut map: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
    let mut seen = 0u64;
    for_each_smooth(&primes, n, &mut |x, exps| {
        let v: Vec<u32> = exps.iter().map(|e| e % m).collect();
        map.entry(v).or_default().push(x);
        seen += 1;
        seen <= limits.smooth_member_budget
    });
    if seen > limits.smooth_member_budget {
        return Err(Error::bound(
            "smooth member count",
            format!("> {}", limits.smooth_member_budget),
            limits.smooth_member_budget,
        ));
    }
    let classes: Vec<ClassMembers> = map
        .into_iter()
        .map(|(v, mut members)| {
            members.sort_unstable();
            ClassMembers {
                class: ExponentClass { m, v },
                members,
            }
        })
        .collect();
    // classes are sorted by v, so the first maximum is the lexicographic tie-break
    let densest = classes
        .iter()
        .fold(None::<&ClassMembers>, |best, c| match best {
            Some(b) if b.members.len() >= c.members.len() => Some(b),
            _ => Some(c),
        })
        .map(|c| (c.class.clone(), c.members.len() as u64))
        .expect("1 is always a member");
    Ok(Partition {
        r,
        n,
        m,
        classes,
        densest,
    })
}
