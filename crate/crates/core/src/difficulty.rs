//! Per-question difficulty, asymptotic vote accuracy and wrong-answer shape.
//!
//! A question is *easy* for a strategy when the correct answer is the unique
//! most likely answer, *moderate* when it ties for the maximum with other
//! answers, and *hard* when some wrong answer is strictly more likely. As the
//! number of votes grows the success probability tends to 1, `1/|S|` and 0
//! respectively, where `S` is the set of answers attaining the maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vote::{check_grid, estimate, AnswerDistribution, Estimator};

/// Tolerance for treating two analytic probabilities as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DifficultyKind {
    Easy,
    Moderate,
    Hard,
}

impl DifficultyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DifficultyKind::Easy => "easy",
            DifficultyKind::Moderate => "moderate",
            DifficultyKind::Hard => "hard",
        }
    }
}

/// Difficulty together with `|S|`, the number of answers at the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifficultyLabel {
    kind: DifficultyKind,
    tie_count: usize,
}

impl DifficultyLabel {
    pub fn new(kind: DifficultyKind, tie_count: usize) -> Result<Self> {
        let ok = match kind {
            DifficultyKind::Easy => tie_count == 1,
            DifficultyKind::Moderate => tie_count >= 2,
            DifficultyKind::Hard => tie_count >= 1,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "{} label cannot have tie count {tie_count}",
                kind.as_str()
            )));
        }
        Ok(Self { kind, tie_count })
    }

    pub fn easy() -> Self {
        Self {
            kind: DifficultyKind::Easy,
            tie_count: 1,
        }
    }

    pub fn kind(&self) -> DifficultyKind {
        self.kind
    }

    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    pub fn is_hard(&self) -> bool {
        self.kind == DifficultyKind::Hard
    }

    /// Success probability as the number of votes grows without bound.
    pub fn limit(&self) -> f64 {
        match self.kind {
            DifficultyKind::Easy => 1.0,
            DifficultyKind::Moderate => 1.0 / self.tie_count as f64,
            DifficultyKind::Hard => 0.0,
        }
    }
}

fn label_from_max_set(correct_in_max: bool, tie_count: usize) -> DifficultyLabel {
    let kind = match (correct_in_max, tie_count) {
        (true, 1) => DifficultyKind::Easy,
        (true, _) => DifficultyKind::Moderate,
        (false, _) => DifficultyKind::Hard,
    };
    DifficultyLabel { kind, tie_count }
}

pub fn classify(dist: &AnswerDistribution) -> DifficultyLabel {
    let max = dist.max_prob();
    let p = dist.probs();
    let in_max = |i: usize| (p[i] - max).abs() <= TIE_TOLERANCE;
    let tie_count = (0..p.len()).filter(|&i| in_max(i)).count();
    label_from_max_set(in_max(dist.correct_index()), tie_count)
}

/// Classification on raw sample counts, where ties are exact.
pub fn classify_counts(counts: &[usize], correct_index: usize) -> Result<DifficultyLabel> {
    if correct_index >= counts.len() || counts.iter().all(|&c| c == 0) {
        return Err(Error::InvalidDistribution(
            "counts must be nonempty with a valid correct index".into(),
        ));
    }
    let max = *counts.iter().max().unwrap();
    let tie_count = counts.iter().filter(|&&c| c == max).count();
    Ok(label_from_max_set(counts[correct_index] == max, tie_count))
}

pub fn limit_prob(dist: &AnswerDistribution) -> f64 {
    classify(dist).limit()
}

/// Separation between the maximal probability and the next lower level
/// (zero-probability answers count as a level at 0).
pub fn max_gap(dist: &AnswerDistribution) -> f64 {
    let max = dist.max_prob();
    let next = dist
        .probs()
        .iter()
        .copied()
        .filter(|&p| p < max - TIE_TOLERANCE)
        .fold(0.0, f64::max);
    max - next
}

/// The sufficient condition under which `first` (which may look better at
/// small `n`) is eventually overtaken by `second`.
///
/// With `p1` the correct probability and `pq` the largest wrong one, both
/// must hold strictly:
///
/// ```text
/// p1 - pq            <  p1' - pq'
/// p1 + pq - p1² - pq² >  p1' + pq' - p1'² - pq'²
/// ```
pub fn crossover_condition(first: &AnswerDistribution, second: &AnswerDistribution) -> bool {
    let (a1, aq) = (first.correct_prob(), first.max_wrong_prob());
    let (b1, bq) = (second.correct_prob(), second.max_wrong_prob());
    let margin = a1 - aq < b1 - bq;
    let spread = a1 + aq - a1 * a1 - aq * aq > b1 + bq - b1 * b1 - bq * bq;
    margin && spread
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverVerdict {
    pub condition_holds: bool,
    /// Smallest grid point where `second` is strictly ahead of `first`.
    pub n0: Option<usize>,
    pub grid: Vec<usize>,
}

/// Scans `grid` for the first sampling time at which `second` beats `first`.
pub fn find_crossover_n(
    first: &AnswerDistribution,
    second: &AnswerDistribution,
    grid: &[usize],
    est: &Estimator,
) -> Result<CrossoverVerdict> {
    check_grid(grid)?;
    let mut n0 = None;
    for &n in grid {
        let a = estimate(first, n, &est.keyed(&[0]))?.value;
        let b = estimate(second, n, &est.keyed(&[1]))?.value;
        if b > a {
            n0 = Some(n);
            break;
        }
    }
    Ok(CrossoverVerdict {
        condition_holds: crossover_condition(first, second),
        n0,
        grid: grid.to_vec(),
    })
}

/// KL divergence, in nats, from the renormalized wrong-answer distribution
/// to the uniform distribution over its support (wrong answers with nonzero
/// probability).
pub fn kl_to_uniform(dist: &AnswerDistribution) -> Result<f64> {
    let c = dist.correct_index();
    let wrong: Vec<f64> = dist
        .probs()
        .iter()
        .enumerate()
        .filter(|&(i, &p)| i != c && p > 0.0)
        .map(|(_, &p)| p)
        .collect();
    let mass: f64 = wrong.iter().sum();
    if wrong.is_empty() || mass <= 0.0 {
        return Err(Error::NoWrongMass);
    }
    let k = wrong.len() as f64;
    let kl: f64 = wrong
        .iter()
        .map(|&p| {
            let q = p / mass;
            q * (q * k).ln()
        })
        .sum();
    Ok(kl.max(0.0))
}
