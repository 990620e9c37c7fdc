use thiserror::Error;

use crate::pipeline::PipelineReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input exceeded one of the configured [`Limits`](crate::Limits).
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("class budget exceeded: {classes} possible classes, budget {budget}")]
    ClassBudgetExceeded { classes: String, budget: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{n} has a prime factor larger than p_{r}")]
    NotSmooth { n: u64, r: usize },

    #[error("{term} does not lie in exponent class {class}")]
    ClassMismatch { term: u64, class: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    /// A route that must come back empty found a progression. Reaching this
    /// means a cited theorem failed or the code is wrong.
    #[error("contradiction: route {} found {} progression(s)", .0.route, .0.witnesses.len())]
    Contradiction(Box<PipelineReport>),
}

impl Error {
    pub(crate) fn bound(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::BoundExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }

    /// True for errors caused by resource limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. } | Error::ClassBudgetExceeded { .. } | Error::Overflow(_)
        )
    }
}
