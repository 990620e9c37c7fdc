//! Configurable bounds and budgets.
//!
//! Every operation that can blow up in time or memory takes a `&Limits`.
//! A TOML config file may override any subset of the fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest bound accepted by the prime sieve.
    pub sieve_limit: u64,
    /// Largest integer `factorize` accepts (trial division up to its square root).
    pub factor_limit: u64,
    /// Largest range for the dense smooth-number sieve.
    pub dense_sieve_limit: u64,
    /// Largest number of members a smooth set may have.
    pub smooth_member_budget: u64,
    /// Largest `m^r` accepted by the class partition.
    pub class_budget: u64,
    /// Largest set (by member count) handed to the progression scanners.
    pub scan_member_budget: u64,
    /// Largest `N` for the exhaustive progression-free search.
    pub ap_free_limit: u64,
    /// Largest bound for exact prime-reciprocal sums.
    pub exact_reciprocal_limit: u64,
    /// Largest root bound for the power-progression verifiers.
    pub verifier_root_limit: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            sieve_limit: 1_000_000_000,
            factor_limit: 1_000_000_000_000,
            dense_sieve_limit: 100_000_000,
            smooth_member_budget: 100_000_000,
            class_budget: 531_441,
            scan_member_budget: 200_000,
            ap_free_limit: 30,
            exact_reciprocal_limit: 1_000_000,
            verifier_root_limit: 1_000_000,
        }
    }
}

impl Limits {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {}", e.message())))
    }

    pub(crate) fn check_sieve(&self, bound: u64) -> Result<()> {
        if bound > self.sieve_limit {
            return Err(Error::bound("sieve bound", bound, self.sieve_limit));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let limits = Limits::from_toml("class_budget = 81\n").unwrap();
        assert_eq!(limits.class_budget, 81);
        assert_eq!(limits.sieve_limit, Limits::default().sieve_limit);
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(matches!(
            Limits::from_toml("sieve_limt = 5"),
            Err(Error::Parse(_))
        ));
    }
}
