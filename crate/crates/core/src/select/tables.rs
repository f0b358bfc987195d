use serde::{Deserialize, Serialize};

use super::{align, StrategyDataset};
use crate::difficulty::{classify, crossover_condition, kl_to_uniform, DifficultyKind};
use crate::error::{Error, Result};

/// Difficulty mix of a dataset and the accuracy it converges to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremePerformance {
    pub easy_frac: f64,
    pub moderate_frac: f64,
    pub hard_frac: f64,
    pub limit_accuracy: f64,
}

pub fn extreme_performance(ds: &StrategyDataset) -> Result<ExtremePerformance> {
    if ds.is_empty() {
        return Err(Error::Empty(format!("dataset {} has no questions", ds.strategy_id())));
    }
    let (mut easy, mut moderate, mut hard, mut limit) = (0usize, 0usize, 0usize, 0.0f64);
    for q in ds.questions() {
        let label = classify(&q.dist);
        match label.kind() {
            DifficultyKind::Easy => easy += 1,
            DifficultyKind::Moderate => moderate += 1,
            DifficultyKind::Hard => hard += 1,
        }
        limit += label.limit();
    }
    let total = ds.len() as f64;
    Ok(ExtremePerformance {
        easy_frac: easy as f64 / total,
        moderate_frac: moderate as f64 / total,
        hard_frac: hard as f64 / total,
        limit_accuracy: limit / total,
    })
}

/// Number of shared questions on which `first` is eventually overtaken by
/// `second` according to the crossover condition.
pub fn dominance_count(first: &StrategyDataset, second: &StrategyDataset) -> Result<usize> {
    let rows = align(&[first, second])?;
    Ok(rows
        .iter()
        .filter(|r| crossover_condition(&r[0].dist, &r[1].dist))
        .count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KlSummary {
    pub mean_kl: f64,
    /// Questions with some wrong-answer mass; the rest are skipped.
    pub questions: usize,
}

/// Average wrong-answer KL divergence to uniform over a dataset.
pub fn mean_kl_to_uniform(ds: &StrategyDataset) -> KlSummary {
    let values: Vec<f64> = ds
        .questions()
        .iter()
        .filter_map(|q| kl_to_uniform(&q.dist).ok())
        .collect();
    let mean_kl = if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    };
    KlSummary {
        mean_kl,
        questions: values.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vote::AnswerDistribution;

    fn ds(id: &str, dists: &[&[f64]]) -> StrategyDataset {
        StrategyDataset::from_dists(
            id,
            dists.iter().map(|p| AnswerDistribution::new(p.to_vec(), 0).unwrap()).collect(),
        )
    }

    #[test]
    fn fractions_and_limit() {
        let d = ds("x", &[&[0.5, 0.3, 0.2], &[0.4, 0.4, 0.2], &[0.2, 0.5, 0.3], &[1.0]]);
        let e = extreme_performance(&d).unwrap();
        assert_eq!((e.easy_frac, e.moderate_frac, e.hard_frac), (0.5, 0.25, 0.25));
        assert!((e.limit_accuracy - 0.625).abs() < 1e-15);
        let all_easy = ds("e", &[&[0.9, 0.1], &[0.6, 0.4]]);
        assert_eq!(extreme_performance(&all_easy).unwrap().limit_accuracy, 1.0);
        assert!(extreme_performance(&ds("empty", &[])).is_err());
    }

    #[test]
    fn dominance() {
        let sbp = ds("sbp", &[&[0.64, 0.35, 0.01]]);
        let cot = ds("cot", &[&[0.6, 0.2, 0.2]]);
        assert_eq!(dominance_count(&sbp, &cot).unwrap(), 1);
        assert_eq!(dominance_count(&cot, &sbp).unwrap(), 0);
        assert_eq!(dominance_count(&sbp, &sbp).unwrap(), 0);
    }

    #[test]
    fn kl_summary_skips_pure_questions() {
        let d = ds("x", &[&[1.0], &[0.6, 0.2, 0.2], &[0.64, 0.35, 0.01]]);
        let s = mean_kl_to_uniform(&d);
        assert_eq!(s.questions, 2);
        let want = kl_to_uniform(&AnswerDistribution::new(vec![0.64, 0.35, 0.01], 0).unwrap()).unwrap() / 2.0;
        assert!((s.mean_kl - want).abs() < 1e-15);
    }
}
