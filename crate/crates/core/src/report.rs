//! CSV tables written by the command-line tool, with matching readers.
//!
//! Every file has a fixed header. Probabilities and accuracies are written
//! with six decimals so repeated runs are byte-identical.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;

fn fixed6<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.6}"))
}

fn fixed6_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&format!("{v:.6}")),
        None => s.serialize_str(""),
    }
}

fn sci<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.6e}"))
}

/// Output of the `exact`, `approx` and `mc` commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRow {
    pub n: usize,
    #[serde(serialize_with = "fixed6")]
    pub value: f64,
    pub method: String,
    #[serde(serialize_with = "fixed6_opt")]
    pub stderr: Option<f64>,
}

/// Same as [`ProbabilityRow`] for each question of a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioProbabilityRow {
    pub strategy_id: String,
    pub question_id: String,
    pub n: usize,
    #[serde(serialize_with = "fixed6")]
    pub value: f64,
    pub method: String,
    #[serde(serialize_with = "fixed6_opt")]
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub strategy_id: String,
    pub n: usize,
    #[serde(serialize_with = "fixed6")]
    pub accuracy: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionRow {
    pub n: usize,
    pub chosen_strategy: String,
    #[serde(serialize_with = "fixed6")]
    pub predicted_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSelectionRow {
    #[serde(serialize_with = "sci")]
    pub budget: f64,
    pub chosen_strategy: String,
    pub chosen_n: usize,
    #[serde(serialize_with = "fixed6")]
    pub predicted_accuracy: f64,
    #[serde(serialize_with = "sci")]
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub strategy_id: String,
    pub n: usize,
    #[serde(serialize_with = "sci")]
    pub total_cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifficultyRow {
    pub strategy_id: String,
    #[serde(serialize_with = "fixed6")]
    pub easy_frac: f64,
    #[serde(serialize_with = "fixed6")]
    pub moderate_frac: f64,
    #[serde(serialize_with = "fixed6")]
    pub hard_frac: f64,
    #[serde(serialize_with = "fixed6")]
    pub limit_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceRow {
    pub strategy_i: String,
    pub strategy_i2: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KlRow {
    pub strategy_id: String,
    #[serde(serialize_with = "fixed6")]
    pub mean_kl: f64,
    pub questions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    /// `vanilla`, `adaptive`, `dynamic` or `combined`.
    pub curve: String,
    /// Empty for curves that mix strategies.
    pub strategy_id: String,
    pub n: usize,
    #[serde(serialize_with = "fixed6")]
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionRow {
    pub strategy_id: String,
    pub question_id: String,
    pub samples: usize,
    pub difficulty: String,
    pub tie_count: usize,
    #[serde(serialize_with = "fixed6")]
    pub correct_prob: f64,
    #[serde(serialize_with = "fixed6")]
    pub max_wrong_prob: f64,
    #[serde(serialize_with = "fixed6")]
    pub max_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub strategy_id: String,
    pub question_id: String,
    pub answer: String,
    pub count: usize,
    #[serde(serialize_with = "fixed6")]
    pub probability: f64,
    pub is_correct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayRow {
    pub strategy_id: String,
    pub n: usize,
    #[serde(serialize_with = "fixed6")]
    pub accuracy: f64,
    pub trials: usize,
}

/// Serializes `rows` as CSV with a header line, even when `rows` is empty.
pub fn write_rows<W: Write, T: Serialize>(out: W, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?;
    Ok(rows)
}

pub fn write_file<T: Serialize>(path: &Path, header: &[&str], rows: &[T]) -> Result<()> {
    write_rows(File::create(path)?, header, rows)
}

pub const PROBABILITY_HEADER: &[&str] = &["n", "value", "method", "stderr"];
pub const SCENARIO_PROBABILITY_HEADER: &[&str] =
    &["strategy_id", "question_id", "n", "value", "method", "stderr"];
pub const CURVE_HEADER: &[&str] = &["strategy_id", "n", "accuracy", "method"];
pub const SELECTION_HEADER: &[&str] = &["n", "chosen_strategy", "predicted_accuracy"];
pub const COST_SELECTION_HEADER: &[&str] =
    &["budget", "chosen_strategy", "chosen_n", "predicted_accuracy", "cost"];
pub const COST_HEADER: &[&str] = &["strategy_id", "n", "total_cost"];
pub const DIFFICULTY_HEADER: &[&str] =
    &["strategy_id", "easy_frac", "moderate_frac", "hard_frac", "limit_accuracy"];
pub const DOMINANCE_HEADER: &[&str] = &["strategy_i", "strategy_i2", "count"];
pub const KL_HEADER: &[&str] = &["strategy_id", "mean_kl", "questions"];
pub const ORACLE_HEADER: &[&str] = &["curve", "strategy_id", "n", "accuracy"];
pub const QUESTION_HEADER: &[&str] = &[
    "strategy_id",
    "question_id",
    "samples",
    "difficulty",
    "tie_count",
    "correct_prob",
    "max_wrong_prob",
    "max_gap",
];
pub const DISTRIBUTION_HEADER: &[&str] =
    &["strategy_id", "question_id", "answer", "count", "probability", "is_correct"];
pub const REPLAY_HEADER: &[&str] = &["strategy_id", "n", "accuracy", "trials"];
