//! Probability that a majority vote over `n` samples returns the correct answer.
//!
//! Four estimators share one model: each of the `n` samples is drawn i.i.d.
//! from an [`AnswerDistribution`], the answer with the highest count wins, and
//! ties among the modal answers are broken uniformly at random.
//!
//! - [`exact_majority_prob`] enumerates every occurrence vector.
//! - [`closed_form_majority_prob`] evaluates the polynomials for three answers at `n = 3, 5`.
//! - [`monte_carlo_majority_prob`] simulates votes with a seeded generator.
//! - [`normal_approx_prob`] is the O(1) normal approximation of the vote margin.

mod approx;
mod closed_form;
mod curve;
mod distribution;
mod exact;
mod simulate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use approx::normal_approx_prob;
pub use closed_form::closed_form_majority_prob;
pub(crate) use curve::check_grid;
pub use curve::{estimate, scaling_curve, Estimator};
pub use distribution::{AnswerDistribution, OccurrenceVector};
pub use exact::{
    exact_majority_prob, exact_majority_prob_with, exact_outcome_probs, ExactCaps,
    WeakCompositions,
};
pub use simulate::{
    monte_carlo_majority_prob, sample_occurrences, simulate_vote, vote_from_occurrences,
};

use crate::error::{Error, Result};

/// Which estimator produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    ClosedForm,
    MonteCarlo,
    NormalApprox,
    Replay,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::ClosedForm => "closed_form",
            Method::MonteCarlo => "monte_carlo",
            Method::NormalApprox => "normal_approx",
            Method::Replay => "replay",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Method::Exact),
            "closed_form" => Ok(Method::ClosedForm),
            "monte_carlo" | "mc" => Ok(Method::MonteCarlo),
            "normal_approx" | "approx" => Ok(Method::NormalApprox),
            "replay" => Ok(Method::Replay),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// A success probability for one sampling time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoteProbability {
    pub value: f64,
    pub method: Method,
    pub n: usize,
    /// Present only for Monte Carlo estimates.
    pub stderr: Option<f64>,
}

impl VoteProbability {
    pub(crate) fn new(value: f64, method: Method, n: usize) -> Self {
        debug_assert!(method != Method::MonteCarlo);
        Self {
            value: value.clamp(0.0, 1.0),
            method,
            n,
            stderr: None,
        }
    }

    pub(crate) fn monte_carlo(value: f64, stderr: f64, n: usize) -> Self {
        Self {
            value,
            method: Method::MonteCarlo,
            n,
            stderr: Some(stderr),
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("sampling time n must be at least 1".into()))
    } else {
        Ok(())
    }
}
