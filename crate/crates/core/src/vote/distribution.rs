use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// Probabilities over a finite answer space, with one answer marked correct.
///
/// Construction validates every invariant, so downstream code can assume a
/// well-formed distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub struct AnswerDistribution {
    probs: Vec<f64>,
    correct: usize,
}

#[derive(Serialize, Deserialize)]
struct RawDistribution {
    probs: Vec<f64>,
    correct_index: usize,
}

impl TryFrom<RawDistribution> for AnswerDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        AnswerDistribution::new(raw.probs, raw.correct_index)
    }
}

impl From<AnswerDistribution> for RawDistribution {
    fn from(d: AnswerDistribution) -> Self {
        RawDistribution {
            probs: d.probs,
            correct_index: d.correct,
        }
    }
}

impl AnswerDistribution {
    pub fn new(probs: Vec<f64>, correct_index: usize) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no answers".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0 || **p > 1.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} at index {i} is outside [0, 1]"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        if correct_index >= probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "correct index {correct_index} out of range for {} answers",
                probs.len()
            )));
        }
        Ok(Self {
            probs,
            correct: correct_index,
        })
    }

    /// Like [`AnswerDistribution::new`] but rescales nonnegative weights to sum to one.
    pub fn from_weights(weights: Vec<f64>, correct_index: usize) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total.is_finite() && total > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be nonnegative with positive sum".into(),
            ));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect(), correct_index)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn correct_index(&self) -> usize {
        self.correct
    }

    /// Number of answers, including zero-probability ones.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn correct_prob(&self) -> f64 {
        self.probs[self.correct]
    }

    /// Largest probability among the wrong answers, 0 when there are none.
    pub fn max_wrong_prob(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.correct)
            .map(|(_, p)| *p)
            .fold(0.0, f64::max)
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Same probabilities with a different answer marked correct.
    pub fn with_correct(&self, correct_index: usize) -> Result<Self> {
        Self::new(self.probs.clone(), correct_index)
    }

    /// Indices of answers with strictly positive probability.
    pub fn support(&self) -> Vec<usize> {
        (0..self.probs.len()).filter(|&i| self.probs[i] > 0.0).collect()
    }
}

/// Occurrence counts of each answer in one round of `n` samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceVector {
    counts: Vec<usize>,
}

impl OccurrenceVector {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Indices attaining the maximum count, in ascending order.
    pub fn modal_set(&self) -> Vec<usize> {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        (0..self.counts.len())
            .filter(|&i| self.counts[i] == max)
            .collect()
    }
}
