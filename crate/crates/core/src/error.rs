use thiserror::Error;

use crate::forest::Violation;
use crate::stirling::WordDefect;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of x^{index} is negative")]
    NegativeCoefficient { index: usize },

    #[error("center {center} is below the polynomial degree {degree}")]
    CenterBelowDegree { center: usize, degree: usize },

    #[error("not symmetric about center {center}: coefficients of x^{low} and x^{high} differ")]
    NotSymmetric {
        center: usize,
        low: usize,
        high: usize,
    },

    #[error("invalid k-Stirling word: {0}")]
    InvalidWord(WordDefect),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid forest: {}", format_violations(.0))]
    InvalidForest(Vec<Violation>),

    #[error("label {0} does not occur")]
    UnknownLabel(u32),

    #[error("{what}: {count} objects exceeds the ceiling of {ceiling}")]
    GuardExceeded {
        what: &'static str,
        count: u128,
        ceiling: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("incompatible family/statistic pair: {family} with {statistic}")]
    Incompatible {
        family: &'static str,
        statistic: &'static str,
    },

    /// An exactness check failed somewhere it cannot fail unless the
    /// implementation is wrong.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
