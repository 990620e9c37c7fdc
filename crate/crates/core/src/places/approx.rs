//! Constructive weak approximation.
//!
//! Given targets `a_i` at distinct places and a tolerance `eps`, build one
//! rational `q` with `|q - a_i|_i < eps` for every `i`:
//!
//! 1. clear denominators with `d = lcm(denominators)`, so `q = y/d` and the
//!    finite conditions become `|y - d a_i|_p < eps |d|_p` on integers;
//! 2. turn each into a congruence modulo `p^m` for the least sufficient `m`;
//! 3. solve the congruences by CRT, giving `x` modulo `M`;
//! 4. if an archimedean target exists, move `x` by `M c / q0^s` (`q0` the least
//!    prime not among the finite places) until it is close enough in the
//!    usual absolute value, which does not disturb any finite condition.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{absolute_value, crt, int_valuation, Place};
use crate::arith::is_prime;
use crate::arith::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateItem {
    pub place: Place,
    #[serde(with = "rational::serde_str")]
    pub target: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    /// `|q - target|` at `place`.
    #[serde(with = "rational::serde_str")]
    pub achieved: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxCertificate {
    #[serde(with = "rational::serde_str")]
    pub q: Rational,
    pub items: Vec<CertificateItem>,
}

impl ApproxCertificate {
    /// Recomputes every `achieved` value and checks `achieved < epsilon`.
    pub fn verify(&self) -> bool {
        self.items.iter().all(|item| {
            let achieved = absolute_value(&(&self.q - &item.target), item.place);
            achieved == item.achieved && achieved < item.epsilon
        })
    }
}

pub fn weak_approximate(
    targets: &[(Place, Rational)],
    epsilon: &Rational,
) -> Result<ApproxCertificate> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let mut seen = BTreeSet::new();
    for (place, _) in targets {
        if let Place::Finite(p) = place {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
        }
        if !seen.insert(*place) {
            return Err(Error::InvalidInput(format!("place {place} listed twice")));
        }
    }

    let d = targets
        .iter()
        .fold(BigInt::one(), |acc, (_, a)| acc.lcm(a.denom()));
    let scaled = |a: &Rational| -> BigInt { (a * Rational::from_integer(d.clone())).to_integer() };

    let mut congruences = Vec::new();
    for (place, a) in targets {
        if let Place::Finite(p) = *place {
            let tolerance = epsilon * super::pow_int(p, -int_valuation(&d, p));
            let modulus = least_power_below(p, &tolerance);
            congruences.push((scaled(a), modulus));
        }
    }
    let (x, modulus) = crt(&congruences)?;

    let y = match targets.iter().find(|(place, _)| place.is_archimedean()) {
        None => Rational::from_integer(x),
        Some((_, a)) => {
            let tolerance = epsilon * Rational::from_integer(d.clone());
            let gap = Rational::from_integer(scaled(a) - &x);
            let aux = auxiliary_prime(targets);
            let shift = archimedean_shift(&gap, &modulus, aux, &tolerance);
            Rational::from_integer(x) + shift
        }
    };
    let q = y / Rational::from_integer(d);

    let items: Vec<CertificateItem> = targets
        .iter()
        .map(|(place, a)| CertificateItem {
            place: *place,
            target: a.clone(),
            epsilon: epsilon.clone(),
            achieved: absolute_value(&(&q - a), *place),
        })
        .collect();
    let cert = ApproxCertificate { q, items };
    assert!(
        cert.items.iter().all(|i| i.achieved < i.epsilon),
        "weak approximation produced an invalid certificate"
    );
    Ok(cert)
}

/// `p^m` for the least `m >= 0` with `p^(-m) < tolerance`.
fn least_power_below(p: u64, tolerance: &Rational) -> BigInt {
    let mut power = BigInt::one();
    while Rational::from_integer(power.clone()) * tolerance <= Rational::one() {
        power *= p;
    }
    power
}

fn auxiliary_prime(targets: &[(Place, Rational)]) -> u64 {
    let used: BTreeSet<u64> = targets
        .iter()
        .filter_map(|(place, _)| match place {
            Place::Finite(p) => Some(*p),
            Place::Archimedean => None,
        })
        .collect();
    (2..).find(|&n| is_prime(n) && !used.contains(&n)).unwrap()
}

/// `M c / q0^s` within `tolerance` of `gap` for the least workable `s`.
fn archimedean_shift(gap: &Rational, modulus: &BigInt, aux: u64, tolerance: &Rational) -> Rational {
    let m = Rational::from_integer(modulus.clone());
    let mut scale = BigInt::one();
    loop {
        let step = &m / Rational::from_integer(scale.clone());
        // nearest integer c to gap / step, ties toward +inf
        let c = (gap / &step + Rational::new(BigInt::one(), BigInt::from(2))).floor();
        let shift = &step * c;
        if (&shift - gap).abs() < *tolerance {
            return shift;
        }
        scale *= aux;
    }
}
