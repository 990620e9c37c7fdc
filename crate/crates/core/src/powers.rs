//! Exhaustive checks for three- and four-term progressions of perfect powers.
//!
//! Three terms `x^n < y^n < z^n` are in progression exactly when
//! `x^n + z^n = 2 y^n`. For each middle root `y` a two-pointer walk over
//! `x` ascending and `z` descending covers every `x < y < z <= B` in `O(B)`,
//! so a bound `B` costs `O(B^2)` while covering all `C(B, 3)` triples.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ap::APWitness;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Statement {
    /// No three positive cubes in progression.
    NoCubeAP3,
    /// No four positive squares in progression.
    NoFourSquareAP,
    /// No three positive `n`-th powers in progression.
    NoPowerAP3(u32),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::NoCubeAP3 => f.write_str("NoCubeAP3"),
            Statement::NoFourSquareAP => f.write_str("NoFourSquareAP"),
            Statement::NoPowerAP3(n) => write!(f, "NoPowerAP3({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: Statement,
    /// Bound on the roots.
    pub bound: u64,
    pub triples_checked: u64,
    /// Roots of each progression found. Always carried, never dropped.
    pub counterexamples: Vec<Vec<u64>>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// `C(b, 3)`: the number of triples `x < y < z <= b`.
pub fn triple_count(b: u64) -> u64 {
    if b < 3 {
        return 0;
    }
    let b = b as u128;
    (b * (b - 1) * (b - 2) / 6) as u64
}

fn check_bound(bound: u64, limits: &Limits) -> Result<()> {
    if bound > limits.verifier_root_limit {
        return Err(Error::bound(
            "root bound",
            bound,
            limits.verifier_root_limit,
        ));
    }
    Ok(())
}

/// Every `(x, y, z)` with `1 <= x < y < z <= bound` and `x^n + z^n = 2 y^n`.
fn power_progressions(n: u32, bound: u64) -> Vec<[u64; 3]> {
    let fits = (bound as u128)
        .checked_pow(n)
        .and_then(|p| p.checked_mul(2))
        .is_some();
    if fits {
        let table: Vec<u128> = (0..=bound).map(|i| (i as u128).pow(n)).collect();
        two_pointer(&table)
    } else {
        let table: Vec<BigUint> = (0..=bound).map(|i| BigUint::from(i).pow(n)).collect();
        two_pointer(&table)
    }
}

fn two_pointer<T>(table: &[T]) -> Vec<[u64; 3]>
where
    T: Ord + Clone + Send + Sync,
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>,
{
    let bound = table.len() as u64 - 1;
    let mut found: Vec<[u64; 3]> = (2..bound)
        .into_par_iter()
        .flat_map_iter(|y| {
            let target = &table[y as usize] + &table[y as usize];
            let (mut x, mut z) = (1u64, bound);
            let mut hits = Vec::new();
            while x < y && z > y {
                let sum = &table[x as usize] + &table[z as usize];
                match sum.cmp(&target) {
                    std::cmp::Ordering::Equal => {
                        hits.push([x, y, z]);
                        x += 1;
                        z -= 1;
                    }
                    std::cmp::Ordering::Less => x += 1,
                    std::cmp::Ordering::Greater => z -= 1,
                }
            }
            hits
        })
        .collect();
    found.sort_unstable();
    found
}

/// Three-term progressions of `n`-th powers with roots `<= bound`, `n >= 3`.
pub fn verify_no_power_ap(n: u32, bound: u64, limits: &Limits) -> Result<VerificationReport> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "exponent {n} < 3; squares do form 3-term progressions"
        )));
    }
    check_bound(bound, limits)?;
    Ok(VerificationReport {
        statement: Statement::NoPowerAP3(n),
        bound,
        triples_checked: triple_count(bound),
        counterexamples: power_progressions(n, bound)
            .into_iter()
            .map(|t| t.to_vec())
            .collect(),
    })
}

pub fn verify_no_cube_ap(bound: u64, limits: &Limits) -> Result<VerificationReport> {
    let mut report = verify_no_power_ap(3, bound, limits)?;
    report.statement = Statement::NoCubeAP3;
    Ok(report)
}

fn is_square(n: u128) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r as u64)
}

/// Four-term progressions of squares with roots `<= bound`, found by
/// extending each square 3-AP `(x, y, z)` backwards to `w^2 = 2x^2 - y^2`.
pub fn verify_no_4_square_ap(bound: u64, limits: &Limits) -> Result<VerificationReport> {
    check_bound(bound, limits)?;
    let counterexamples = power_progressions(2, bound)
        .into_iter()
        .filter_map(|[x, y, z]| {
            let (x2, y2) = ((x as u128).pow(2), (y as u128).pow(2));
            let w2 = (2 * x2).checked_sub(y2).filter(|&w2| w2 > 0)?;
            is_square(w2).map(|w| vec![w, x, y, z])
        })
        .collect();
    Ok(VerificationReport {
        statement: Statement::NoFourSquareAP,
        bound,
        triples_checked: triple_count(bound),
        counterexamples,
    })
}

/// All `x^2 < y^2 < z^2` in progression with `z <= bound`, as witnesses
/// `(x^2, y^2 - x^2, 3)`, sorted.
pub fn square_3ap_search(bound: u64, limits: &Limits) -> Result<Vec<APWitness>> {
    check_bound(bound, limits)?;
    let mut out: Vec<APWitness> = power_progressions(2, bound)
        .into_iter()
        .map(|[x, y, _]| APWitness {
            a: x * x,
            d: y * y - x * x,
            k: 3,
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}
