use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{align, question_estimate, QuestionEntry, StrategyDataset};
use crate::difficulty::classify;
use crate::error::{Error, Result};
use crate::vote::{check_grid, Estimator, Method, VoteProbability};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub accuracy: f64,
    /// `normal_approx` when an exact request fell back on any question.
    pub method: Method,
}

/// Dataset accuracy as a function of sampling time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingCurve {
    pub strategy_id: String,
    pub method: Method,
    pub points: Vec<CurvePoint>,
}

impl ScalingCurve {
    pub fn accuracy_at(&self, n: usize) -> Option<f64> {
        self.points.iter().find(|p| p.n == n).map(|p| p.accuracy)
    }

    pub fn accuracies(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.accuracy).collect()
    }
}

fn point(n: usize, est: &Estimator, values: Vec<VoteProbability>) -> CurvePoint {
    let requested = est.method();
    let method = if values.iter().any(|v| v.method != requested) {
        Method::NormalApprox
    } else {
        requested
    };
    // Summed in question order so parallel evaluation stays reproducible.
    let accuracy = values.iter().map(|v| v.value).sum::<f64>() / values.len() as f64;
    CurvePoint { n, accuracy, method }
}

/// Evaluates `per_question` for every row and grid point, then averages.
fn mean_curve<T: Sync>(
    label: &str,
    rows: &[T],
    ns: &[usize],
    est: &Estimator,
    per_question: impl Fn(&T, usize) -> Result<VoteProbability> + Sync,
) -> Result<ScalingCurve> {
    check_grid(ns)?;
    if rows.is_empty() {
        return Err(Error::Empty(format!("dataset {label} has no questions")));
    }
    let points = ns
        .iter()
        .map(|&n| {
            let values = rows
                .par_iter()
                .map(|r| per_question(r, n))
                .collect::<Result<Vec<_>>>()?;
            Ok(point(n, est, values))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalingCurve {
        strategy_id: label.to_string(),
        method: est.method(),
        points,
    })
}

/// Mean per-question vote success probability at each grid point.
pub fn accuracy_curve(ds: &StrategyDataset, ns: &[usize], est: &Estimator) -> Result<ScalingCurve> {
    let sid = ds.strategy_id();
    mean_curve(sid, ds.questions(), ns, est, |q, n| question_estimate(sid, q, n, est))
}

/// Oracle adaptive scaling: hard questions are answered once, the rest are
/// voted over `n` samples.
pub fn adaptive_curve(ds: &StrategyDataset, ns: &[usize], est: &Estimator) -> Result<ScalingCurve> {
    let sid = ds.strategy_id();
    mean_curve(sid, ds.questions(), ns, est, |q, n| {
        let n = if classify(&q.dist).is_hard() { 1 } else { n };
        question_estimate(sid, q, n, est)
    })
}

fn best_of(
    dss: &[StrategyDataset],
    row: &[&QuestionEntry],
    n: usize,
    est: &Estimator,
    adaptive: bool,
) -> Result<VoteProbability> {
    let mut best: Option<VoteProbability> = None;
    for (ds, q) in dss.iter().zip(row) {
        let n = if adaptive && classify(&q.dist).is_hard() { 1 } else { n };
        let v = question_estimate(ds.strategy_id(), q, n, est)?;
        if best.is_none_or(|b| v.value > b.value) {
            best = Some(v);
        }
    }
    Ok(best.expect("at least one strategy"))
}

/// Oracle per-question strategy choice: each question uses whichever
/// strategy has the highest success probability at `n`.
pub fn dynamic_curve(dss: &[StrategyDataset], ns: &[usize], est: &Estimator) -> Result<ScalingCurve> {
    let rows = align(&dss.iter().collect::<Vec<_>>())?;
    mean_curve("dynamic", &rows, ns, est, |row, n| best_of(dss, row, n, est, false))
}

/// Dynamic choice over strategies that have each been made adaptive.
pub fn combined_curve(dss: &[StrategyDataset], ns: &[usize], est: &Estimator) -> Result<ScalingCurve> {
    let rows = align(&dss.iter().collect::<Vec<_>>())?;
    mean_curve("combined", &rows, ns, est, |row, n| best_of(dss, row, n, est, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vote::AnswerDistribution;

    fn dist(p: &[f64]) -> AnswerDistribution {
        AnswerDistribution::new(p.to_vec(), 0).unwrap()
    }

    fn ds(id: &str, dists: &[&[f64]]) -> StrategyDataset {
        StrategyDataset::from_dists(id, dists.iter().map(|p| dist(p)).collect())
    }

    #[test]
    fn single_question_curve() {
        let c = accuracy_curve(&ds("sbp", &[&[0.64, 0.35, 0.01]]), &[1, 3, 5], &Estimator::exact()).unwrap();
        for (got, want) in c.accuracies().iter().zip([0.640, 0.709, 0.757]) {
            assert!((got - want).abs() < 0.0005);
        }
        assert_eq!(c.method, Method::Exact);
        assert_eq!(c.strategy_id, "sbp");
    }

    #[test]
    fn means_over_questions() {
        let d = ds("cot", &[&[0.6, 0.2, 0.2], &[0.2, 0.5, 0.3]]);
        let c = accuracy_curve(&d, &[1], &Estimator::exact()).unwrap();
        assert!((c.points[0].accuracy - 0.4).abs() < 1e-12);
        let certain = ds("x", &[&[1.0], &[1.0, 0.0]]);
        let c = accuracy_curve(&certain, &[1, 7, 30], &Estimator::exact()).unwrap();
        assert!(c.accuracies().iter().all(|&a| a == 1.0));
    }

    #[test]
    fn fallback_marks_points() {
        let d = ds("a", &[&[0.6, 0.4]]);
        let c = accuracy_curve(&d, &[5, 100], &Estimator::exact_with_fallback()).unwrap();
        assert_eq!(c.points[0].method, Method::Exact);
        assert_eq!(c.points[1].method, Method::NormalApprox);
    }

    #[test]
    fn adaptive_on_hard_question() {
        let hard = ds("h", &[&[0.4, 0.45, 0.15]]);
        let grid = [1, 3, 11, 31];
        let a = adaptive_curve(&hard, &grid, &Estimator::exact()).unwrap();
        assert!(a.accuracies().iter().all(|&v| (v - 0.4).abs() < 1e-12));
        let easy = ds("e", &[&[0.5, 0.3, 0.2], &[0.7, 0.3]]);
        assert_eq!(
            adaptive_curve(&easy, &grid, &Estimator::exact()).unwrap(),
            accuracy_curve(&easy, &grid, &Estimator::exact()).unwrap()
        );
    }

    #[test]
    fn dynamic_worked_pair() {
        let sbp = ds("sbp", &[&[0.64, 0.35, 0.01]]);
        let cot = ds("cot", &[&[0.6, 0.2, 0.2]]);
        let pair = [sbp.clone(), cot];
        let d = dynamic_curve(&pair, &[1, 5], &Estimator::exact()).unwrap();
        assert!((d.points[0].accuracy - 0.640).abs() < 1e-12);
        assert!((d.points[1].accuracy - 0.76896).abs() < 1e-12);
        let solo = dynamic_curve(std::slice::from_ref(&sbp), &[1, 5], &Estimator::exact()).unwrap();
        assert_eq!(solo.accuracies(), accuracy_curve(&sbp, &[1, 5], &Estimator::exact()).unwrap().accuracies());
    }

    #[test]
    fn combined_rescues_hard_question() {
        let a = ds("a", &[&[0.4, 0.45, 0.15]]);
        let b = ds("b", &[&[0.55, 0.45]]);
        let est = Estimator::exact_with_fallback();
        let c = combined_curve(&[a, b], &[201], &est).unwrap();
        assert!(c.points[0].accuracy > 0.9, "{}", c.points[0].accuracy);
    }

    #[test]
    fn id_mismatch() {
        let a = StrategyDataset::new("a", vec![QuestionEntry::new("x", dist(&[1.0]))]).unwrap();
        let b = StrategyDataset::new("b", vec![QuestionEntry::new("y", dist(&[1.0]))]).unwrap();
        assert!(matches!(dynamic_curve(&[a, b], &[1], &Estimator::exact()), Err(Error::IdMismatch(_))));
    }
}
