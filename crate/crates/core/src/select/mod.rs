//! Dataset-level accuracy curves, strategy selection under sampling-time and
//! cost budgets, difficulty and dominance tables, and oracle improvements.
//!
//! A [`StrategyDataset`] holds one answer distribution per question for a
//! single prompting strategy. Dataset accuracy at `n` is the mean over
//! questions of the per-question vote success probability.

mod choose;
mod curves;
mod scenario;
mod tables;

pub use choose::{best_for_n, best_under_cost, Budget, SelectionResult};
pub use curves::{accuracy_curve, adaptive_curve, combined_curve, dynamic_curve, CurvePoint, ScalingCurve};
pub use scenario::{parse_scenario, write_scenario, ScenarioRow};
pub use tables::{dominance_count, extreme_performance, mean_kl_to_uniform, ExtremePerformance, KlSummary};

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::records::CostModel;
use crate::seed::derive_seed;
use crate::vote::{estimate, AnswerDistribution, Estimator, VoteProbability};

/// One question as seen by one strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionEntry {
    pub question_id: String,
    pub dist: AnswerDistribution,
    pub mean_prompt_tokens: f64,
    pub mean_completion_tokens: f64,
}

impl QuestionEntry {
    pub fn new(question_id: impl Into<String>, dist: AnswerDistribution) -> Self {
        Self {
            question_id: question_id.into(),
            dist,
            mean_prompt_tokens: 0.0,
            mean_completion_tokens: 0.0,
        }
    }

    pub fn with_tokens(mut self, prompt: f64, completion: f64) -> Self {
        self.mean_prompt_tokens = prompt;
        self.mean_completion_tokens = completion;
        self
    }
}

/// Per-question distributions for a single prompting strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyDataset {
    strategy_id: String,
    questions: Vec<QuestionEntry>,
}

impl StrategyDataset {
    pub fn new(strategy_id: impl Into<String>, questions: Vec<QuestionEntry>) -> Result<Self> {
        let strategy_id = strategy_id.into();
        let mut seen = HashSet::new();
        for q in &questions {
            if !seen.insert(q.question_id.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "question {} appears twice in strategy {strategy_id}",
                    q.question_id
                )));
            }
        }
        Ok(Self {
            strategy_id,
            questions,
        })
    }

    /// Builds a dataset from bare distributions, naming questions `q0, q1, ...`.
    pub fn from_dists(strategy_id: impl Into<String>, dists: Vec<AnswerDistribution>) -> Self {
        let questions = dists
            .into_iter()
            .enumerate()
            .map(|(i, d)| QuestionEntry::new(format!("q{i}"), d))
            .collect();
        Self {
            strategy_id: strategy_id.into(),
            questions,
        }
    }

    pub fn strategy_id(&self) -> &str {
        &self.strategy_id
    }

    pub fn questions(&self) -> &[QuestionEntry] {
        &self.questions
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    /// Total cost of one sample of every question.
    pub fn cost_per_round(&self, model: &CostModel) -> f64 {
        self.questions
            .iter()
            .map(|q| model.sample_cost(q.mean_prompt_tokens, q.mean_completion_tokens))
            .sum()
    }
}

pub(crate) fn string_key(s: &str) -> u64 {
    // FNV-1a
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Per-question estimate. Monte Carlo streams are keyed by strategy and
/// question id, so the same pair always sees the same draws regardless of
/// where it sits in a dataset.
pub(crate) fn question_estimate(
    strategy_id: &str,
    q: &QuestionEntry,
    n: usize,
    est: &Estimator,
) -> Result<VoteProbability> {
    let keyed = est.keyed(&[derive_seed(&[string_key(strategy_id), string_key(&q.question_id)])]);
    estimate(&q.dist, n, &keyed)
}

/// Questions present in every dataset, in the first dataset's order.
pub(crate) fn align<'a>(dss: &[&'a StrategyDataset]) -> Result<Vec<Vec<&'a QuestionEntry>>> {
    let first = dss
        .first()
        .ok_or_else(|| Error::Empty("no strategies given".into()))?;
    let maps: Vec<HashMap<&str, &QuestionEntry>> = dss
        .iter()
        .map(|ds| ds.questions.iter().map(|q| (q.question_id.as_str(), q)).collect())
        .collect();
    let rows: Vec<Vec<&QuestionEntry>> = first
        .questions
        .iter()
        .filter_map(|q| {
            maps.iter()
                .map(|m| m.get(q.question_id.as_str()).copied())
                .collect::<Option<Vec<_>>>()
        })
        .collect();
    if rows.is_empty() {
        let ids: Vec<&str> = dss.iter().map(|d| d.strategy_id()).collect();
        return Err(Error::IdMismatch(ids.join(", ")));
    }
    Ok(rows)
}
