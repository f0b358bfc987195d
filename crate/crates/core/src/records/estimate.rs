use std::collections::HashMap;

use super::{QuestionSamples, UNPARSEABLE};
use crate::difficulty::{classify_counts, DifficultyLabel};
use crate::error::{Error, Result};
use crate::vote::AnswerDistribution;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EstimateOptions {
    /// Add one to every observed count (and to the correct answer).
    pub add_one: bool,
}

/// Empirical answer distribution with the labels and counts behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatedDistribution {
    /// Distinct answers in first-appearance order; the correct answer is
    /// appended when it was never sampled.
    pub answers: Vec<String>,
    pub counts: Vec<usize>,
    pub dist: AnswerDistribution,
}

impl EstimatedDistribution {
    /// Difficulty from the integer counts, so ties are exact.
    pub fn label(&self) -> DifficultyLabel {
        classify_counts(&self.counts, self.dist.correct_index())
            .expect("estimate has positive counts and a valid index")
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Maximum-likelihood estimate: each distinct answer gets count / total.
pub fn estimate_distribution(samples: &QuestionSamples) -> Result<EstimatedDistribution> {
    estimate_distribution_with(samples, EstimateOptions::default())
}

pub fn estimate_distribution_with(
    samples: &QuestionSamples,
    options: EstimateOptions,
) -> Result<EstimatedDistribution> {
    if samples.answers.is_empty() {
        return Err(Error::Empty(format!(
            "no samples for question {} under {}",
            samples.question_id, samples.strategy_id
        )));
    }
    let mut answers: Vec<String> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut slot: HashMap<&str, usize> = HashMap::new();
    for a in &samples.answers {
        let i = *slot.entry(a.as_str()).or_insert_with(|| {
            answers.push(a.clone());
            counts.push(0);
            answers.len() - 1
        });
        counts[i] += 1;
    }
    let correct = match answers
        .iter()
        .position(|a| a != UNPARSEABLE && *a == samples.correct_answer)
    {
        Some(i) => i,
        None => {
            answers.push(samples.correct_answer.clone());
            counts.push(0);
            answers.len() - 1
        }
    };
    if options.add_one {
        counts.iter_mut().for_each(|c| *c += 1);
    }
    let total = counts.iter().sum::<usize>() as f64;
    let probs = counts.iter().map(|&c| c as f64 / total).collect();
    let dist = AnswerDistribution::new(probs, correct)?;
    Ok(EstimatedDistribution {
        answers,
        counts,
        dist,
    })
}
