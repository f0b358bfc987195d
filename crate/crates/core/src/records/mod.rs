//! Recorded answer samples: parsing, distribution estimates, replayed votes
//! and token cost.
//!
//! A log holds one JSON object per line:
//!
//! ```text
//! {"question_id":"q1","strategy_id":"cot","sample_index":0,"answer":"42","prompt_tokens":310,"completion_tokens":128}
//! ```
//!
//! Ground truth is a second line-delimited file of
//! `{"question_id": ..., "correct_answer": ...}` objects.

mod cost;
mod estimate;
mod log;
mod replay;

pub use cost::{cost_of, CostModel};
pub use estimate::{estimate_distribution, estimate_distribution_with, EstimateOptions, EstimatedDistribution};
pub use log::{parse_ground_truth, parse_log, Canonicalize, GroundTruth, Normalizer, SampleLog};
pub use replay::{replay_majority, Resampling};

use serde::{Deserialize, Serialize};

/// Answer recorded for outputs the extractor could not parse. Never equal
/// to any correct answer.
pub const UNPARSEABLE: &str = "∅";

/// One generation as it appears in a log line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub question_id: String,
    pub strategy_id: String,
    pub sample_index: u64,
    /// `None` (or an empty string) marks an unparseable output.
    #[serde(default)]
    pub answer: Option<String>,
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
}

/// All samples of one question under one strategy, ordered by sample index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionSamples {
    pub question_id: String,
    pub strategy_id: String,
    pub correct_answer: String,
    pub answers: Vec<String>,
    pub mean_prompt_tokens: f64,
    pub mean_completion_tokens: f64,
}

impl QuestionSamples {
    /// Whether a canonical answer counts as correct.
    pub fn is_correct(&self, answer: &str) -> bool {
        answer != UNPARSEABLE && answer == self.correct_answer
    }
}
