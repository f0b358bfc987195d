use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{QuestionEntry, StrategyDataset};
use crate::error::{Error, Result};
use crate::vote::AnswerDistribution;

/// One line of an analytic scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRow {
    pub strategy_id: String,
    pub question_id: String,
    pub probs: Vec<f64>,
    pub correct_index: usize,
    #[serde(default)]
    pub mean_prompt_tokens: f64,
    #[serde(default)]
    pub mean_completion_tokens: f64,
}

/// Reads a scenario file into one dataset per strategy, in order of first
/// appearance.
pub fn parse_scenario<R: BufRead>(reader: R) -> Result<Vec<StrategyDataset>> {
    let mut order: Vec<String> = Vec::new();
    let mut by_strategy: HashMap<String, Vec<QuestionEntry>> = HashMap::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    for (i, text) in reader.lines().enumerate() {
        let line = i + 1;
        let text = text?;
        if text.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| Error::MalformedLine { line, reason };
        let row: ScenarioRow = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        if !(row.mean_prompt_tokens >= 0.0 && row.mean_completion_tokens >= 0.0) {
            return Err(bad("token means must be nonnegative".into()));
        }
        let dist = AnswerDistribution::new(row.probs, row.correct_index).map_err(|e| bad(e.to_string()))?;
        if !seen.insert((row.strategy_id.clone(), row.question_id.clone())) {
            return Err(bad(format!(
                "question {} listed twice for strategy {}",
                row.question_id, row.strategy_id
            )));
        }
        let entry = QuestionEntry::new(row.question_id, dist)
            .with_tokens(row.mean_prompt_tokens, row.mean_completion_tokens);
        by_strategy
            .entry(row.strategy_id.clone())
            .or_insert_with(|| {
                order.push(row.strategy_id.clone());
                Vec::new()
            })
            .push(entry);
    }
    if order.is_empty() {
        return Err(Error::Empty("scenario has no rows".into()));
    }
    order
        .into_iter()
        .map(|sid| {
            let qs = by_strategy.remove(&sid).unwrap();
            StrategyDataset::new(sid, qs)
        })
        .collect()
}

pub fn write_scenario<W: Write>(mut out: W, dss: &[StrategyDataset]) -> Result<()> {
    for ds in dss {
        for q in ds.questions() {
            let row = ScenarioRow {
                strategy_id: ds.strategy_id().to_string(),
                question_id: q.question_id.clone(),
                probs: q.dist.probs().to_vec(),
                correct_index: q.dist.correct_index(),
                mean_prompt_tokens: q.mean_prompt_tokens,
                mean_completion_tokens: q.mean_completion_tokens,
            };
            serde_json::to_writer(&mut out, &row).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
