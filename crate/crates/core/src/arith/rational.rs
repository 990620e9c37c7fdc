//! Exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. This module adds the pieces the
//! rest of the crate needs on top: checked construction, `p/q` parsing, and
//! rendering (exact or fixed-point decimal).

use std::cell::Cell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds the canonical reduced form of `numerator / denominator`.
pub fn normalize(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Rational> {
    let denominator = denominator.into();
    if denominator.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(numerator.into(), denominator))
}

pub fn from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` (optional leading `-` on either part).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num = parse_bigint(num)?;
    match den {
        Some(d) => normalize(num, parse_bigint(d)?),
        None => Ok(from_int(num)),
    }
}

fn parse_bigint(text: &str) -> Result<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {text:?}")));
    }
    text.parse()
        .map_err(|_| Error::Parse(format!("not an integer: {text:?}")))
}

thread_local! {
    static DECIMAL_DIGITS: Cell<Option<u32>> = const { Cell::new(None) };
}

/// Runs `f` with rational rendering switched to `digits` decimal places.
///
/// Affects [`render`] and the serde adapters in [`serde_str`] on the current
/// thread only. The previous mode is restored afterwards.
pub fn with_decimal_rendering<T>(digits: Option<u32>, f: impl FnOnce() -> T) -> T {
    struct Restore(Option<u32>);
    impl Drop for Restore {
        fn drop(&mut self) {
            DECIMAL_DIGITS.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(DECIMAL_DIGITS.with(|d| d.replace(digits)));
    f()
}

/// Renders `q` as `p/q` (or `p` for integers), or as a decimal inside
/// [`with_decimal_rendering`].
pub fn render(q: &Rational) -> String {
    match DECIMAL_DIGITS.with(Cell::get) {
        Some(digits) => to_decimal(q, digits),
        None => q.to_string(),
    }
}

/// Decimal expansion rounded half away from zero to `digits` places.
pub fn to_decimal(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let rounded = if rem * 2u32 >= *scaled.denom() {
        whole + 1u32
    } else {
        whole
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// `p^e` as a rational, for any integer exponent.
pub fn pow_int(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, render, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        normalize(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        let zero = q(0, 5);
        assert!(zero.numer().is_zero());
        assert!(zero.denom().is_one());
        assert_eq!(q(247, 210).to_string(), "247/210");
        assert!(matches!(normalize(1, 0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("31/30").unwrap(), q(31, 30));
        assert_eq!(parse_rational(" -7/5 ").unwrap(), q(-7, 5));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert_eq!(parse_rational("6/-4").unwrap(), q(-3, 2));
        for bad in ["", "/", "1/", "+3", "1/2/3", "0x10", "--1", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert!(matches!(parse_rational("3/0"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&q(247, 210), 6), "1.176190");
        assert_eq!(to_decimal(&q(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&q(5, 2), 0), "3");
        assert_eq!(to_decimal(&q(7, 1), 2), "7.00");
    }

    #[test]
    fn rendering_mode_is_scoped() {
        let x = q(1, 3);
        assert_eq!(render(&x), "1/3");
        let inner = with_decimal_rendering(Some(4), || render(&x));
        assert_eq!(inner, "0.3333");
        assert_eq!(render(&x), "1/3");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_int(2, -3), q(1, 8));
        assert_eq!(pow_int(3, 2), q(9, 1));
        assert_eq!(pow_int(5, 0), q(1, 1));
    }
}
