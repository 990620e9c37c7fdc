//! Text forms accepted on the command line.
//!
//! - integer lists: `1,3,5` with inclusive ranges `10-20`
//! - approximation targets: `2:1,3:0,inf:100` (`place:rational`)
//! - residue vectors: `2,1` or `(2,1)`; empty vector `()`

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::places::Place;

/// Largest number of integers a list may expand to.
pub const MAX_LIST_LEN: u64 = 10_000_000;

fn parse_u64(text: &str) -> Result<u64> {
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a non-negative integer: {t:?}")));
    }
    t.parse()
        .map_err(|_| Error::Parse(format!("integer out of range: {t:?}")))
}

pub fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    for item in text.split(',') {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (parse_u64(lo)?, parse_u64(hi)?);
                if lo > hi {
                    return Err(Error::Parse(format!("empty range {lo}-{hi}")));
                }
                if out.len() as u64 + (hi - lo) >= MAX_LIST_LEN {
                    return Err(Error::Parse("list too long".into()));
                }
                out.extend(lo..=hi);
            }
            None => {
                if out.len() as u64 >= MAX_LIST_LEN {
                    return Err(Error::Parse("list too long".into()));
                }
                out.push(parse_u64(item)?);
            }
        }
    }
    Ok(out)
}

pub fn parse_targets(text: &str) -> Result<Vec<(Place, Rational)>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let (place, value) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("target {item:?} is not place:value")))?;
            Ok((place.parse::<Place>()?, parse_rational(value)?))
        })
        .collect()
}

pub fn parse_residues(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            parse_u64(x).and_then(|v| {
                u32::try_from(v).map_err(|_| Error::Parse(format!("residue {v} too large")))
            })
        })
        .collect()
}
