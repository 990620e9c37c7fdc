//! Places of the rationals and the absolute values attached to them.
//!
//! A place is either a prime `p`, carrying `|q|_p = p^(-v_p(q))`, or the
//! archimedean place carrying the usual absolute value. Everything is exact.

mod approx;
mod crt;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::{self, pow_int, Rational};
use crate::arith::{factorize_abs, is_prime};
use crate::error::{Error, Result};
use crate::limits::Limits;

pub use approx::{weak_approximate, ApproxCertificate, CertificateItem};
pub use crt::crt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Archimedean,
}

impl Place {
    /// A finite place; fails unless `p` is prime.
    pub fn finite(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean)
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Archimedean) => Ordering::Less,
            (Place::Archimedean, Place::Finite(_)) => Ordering::Greater,
            (Place::Archimedean, Place::Archimedean) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Archimedean => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "oo" | "∞" => Ok(Place::Archimedean),
            other => {
                if other.is_empty() || !other.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("not a place: {other:?}")));
                }
                let p: u64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("not a place: {other:?}")))?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `v_p(q)`; `PositiveInfinity` exactly for `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    PositiveInfinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::PositiveInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::PositiveInfinity => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Text(t) if t == "+inf" => Ok(Valuation::PositiveInfinity),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad valuation {t:?}"))),
        }
    }
}

/// Exponent of `p` in `|n|`, for `n != 0`.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = rest.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        rest = quot;
        v += 1;
    }
}

pub fn valuation(q: &Rational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation_unchecked(q, p))
}

pub(crate) fn valuation_unchecked(q: &Rational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::PositiveInfinity;
    }
    Valuation::Finite(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

pub fn absolute_value(q: &Rational, place: Place) -> Rational {
    match place {
        Place::Archimedean => q.abs(),
        Place::Finite(p) => match valuation_unchecked(q, p) {
            Valuation::PositiveInfinity => Rational::zero(),
            Valuation::Finite(v) => pow_int(p, -v),
        },
    }
}

/// `|q|_v` at the archimedean place and at every prime dividing the numerator
/// or denominator of `q`; every other place contributes exactly 1.
pub fn product_formula_terms(q: &Rational, limits: &Limits) -> Result<Vec<(Place, Rational)>> {
    if q.is_zero() {
        return Err(Error::Domain("product formula needs q != 0".into()));
    }
    let mut primes: Vec<u64> = factorize_abs(q.numer(), limits)?
        .primes()
        .chain(factorize_abs(q.denom(), limits)?.primes())
        .collect();
    primes.sort_unstable();
    let mut terms: Vec<(Place, Rational)> = primes
        .into_iter()
        .map(|p| (Place::Finite(p), absolute_value(q, Place::Finite(p))))
        .collect();
    terms.push((Place::Archimedean, absolute_value(q, Place::Archimedean)));
    Ok(terms)
}

/// The product of `|q|_v` over all places. Always exactly 1.
pub fn product_formula_check(q: &Rational, limits: &Limits) -> Result<Rational> {
    Ok(product_formula_terms(q, limits)?
        .into_iter()
        .fold(Rational::one(), |acc, (_, v)| acc * v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaceValue {
    pub place: Place,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

/// `q = (P+1)/P` for `P` the product of a finite set of primes, with the
/// local absolute values that exceed 1 and the places that pull the global
/// product back down to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EuclidWitness {
    pub primes: Vec<u64>,
    #[serde(with = "rational::serde_str")]
    pub q: Rational,
    /// `|q|_p` for `p` in the set, then `|q|_inf`; all exceed 1.
    pub local: Vec<PlaceValue>,
    #[serde(with = "rational::serde_str")]
    pub partial_product: Rational,
    /// Prime factors of `P+1`, each with `|q|_p < 1`.
    pub missing: Vec<PlaceValue>,
    #[serde(with = "rational::serde_str")]
    pub global_product: Rational,
}

pub fn euclid_witness(primes: &[u64], limits: &Limits) -> Result<EuclidWitness> {
    let mut set = primes.to_vec();
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("prime set has duplicates".into()));
    }
    if let Some(&bad) = set.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let product: BigInt = set.iter().map(|&p| BigInt::from(p)).product();
    let q = Rational::new(&product + 1u32, product.clone());

    let mut local: Vec<PlaceValue> = set
        .iter()
        .map(|&p| PlaceValue {
            place: Place::Finite(p),
            value: absolute_value(&q, Place::Finite(p)),
        })
        .collect();
    local.push(PlaceValue {
        place: Place::Archimedean,
        value: absolute_value(&q, Place::Archimedean),
    });
    let partial_product = local.iter().fold(Rational::one(), |acc, t| acc * &t.value);

    let missing: Vec<PlaceValue> = factorize_abs(q.numer(), limits)?
        .primes()
        .map(|p| PlaceValue {
            place: Place::Finite(p),
            value: absolute_value(&q, Place::Finite(p)),
        })
        .collect();
    let global_product = missing
        .iter()
        .fold(partial_product.clone(), |acc, t| acc * &t.value);

    Ok(EuclidWitness {
        primes: set,
        q,
        local,
        partial_product,
        missing,
        global_product,
    })
}
