//! End-to-end run of the progression argument at a finite scale:
//! smooth set, exponent classes, per-class progression scan, and reduction of
//! any progression found to a progression of perfect powers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ap::{ap_to_power_witness, class_ap_scan, APWitness};
use crate::classes::partition_classes;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Exponents mod 3, three-term progressions (reduces to cubes).
    Seki,
    /// Exponents mod 2, four-term progressions (reduces to squares).
    Granville,
    /// Exponents mod 2, three-term progressions; squares do form these.
    Demo,
}

impl Route {
    pub fn modulus(self) -> u32 {
        match self {
            Route::Seki => 3,
            Route::Granville | Route::Demo => 2,
        }
    }

    pub fn length(self) -> u32 {
        match self {
            Route::Seki | Route::Demo => 3,
            Route::Granville => 4,
        }
    }

    /// Whether a progression on this route would contradict a known theorem.
    pub fn must_be_empty(self) -> bool {
        !matches!(self, Route::Demo)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Seki => "seki",
            Route::Granville => "granville",
            Route::Demo => "demo",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "seki" => Ok(Route::Seki),
            "granville" => Ok(Route::Granville),
            "demo" => Ok(Route::Demo),
            other => Err(Error::Parse(format!("unknown route {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NoProgressionFound,
    ProgressionsFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensestClass {
    pub v: Vec<u32>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineWitness {
    pub v: Vec<u32>,
    pub witness: APWitness,
    /// Class representative the terms were divided by.
    pub representative: u64,
    /// `(term / representative, m-th root)` per term.
    pub powers: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub route: Route,
    pub m: u32,
    pub k: u32,
    pub r: usize,
    pub n: u64,
    pub smooth_count: u64,
    pub possible_classes: u64,
    pub nonempty_classes: u64,
    pub densest: DensestClass,
    pub witnesses: Vec<PipelineWitness>,
    pub verdict: Verdict,
}

/// Runs the route on `P_r ∩ [1, n]`.
///
/// A progression on a route that [must be empty](Route::must_be_empty) is
/// returned as [`Error::Contradiction`] carrying the full report.
pub fn run_pipeline(route: Route, r: usize, n: u64, limits: &Limits) -> Result<PipelineReport> {
    run_with(route, route.modulus(), route.length(), r, n, limits)
}

fn run_with(
    route: Route,
    m: u32,
    k: u32,
    r: usize,
    n: u64,
    limits: &Limits,
) -> Result<PipelineReport> {
    let partition = partition_classes(r, n, m, limits)?;
    let scan = class_ap_scan(r, n, m, k, limits)?;
    let witnesses = scan
        .into_iter()
        .map(|found| {
            let powers = ap_to_power_witness(&found.witness, &found.class, limits)?;
            Ok(PipelineWitness {
                representative: found.witness.a / powers[0].0,
                v: found.class.v,
                witness: found.witness,
                powers,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if witnesses.is_empty() {
        Verdict::NoProgressionFound
    } else {
        Verdict::ProgressionsFound
    };
    let report = PipelineReport {
        route,
        m,
        k,
        r,
        n,
        smooth_count: partition.total_members() as u64,
        possible_classes: partition.possible_classes() as u64,
        nonempty_classes: partition.classes.len() as u64,
        densest: DensestClass {
            v: partition.densest.0.v.clone(),
            count: partition.densest.1,
        },
        witnesses,
        verdict,
    };
    if route.must_be_empty() && report.verdict == Verdict::ProgressionsFound {
        return Err(Error::Contradiction(Box::new(report)));
    }
    Ok(report)
}
