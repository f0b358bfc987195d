use serde::{Deserialize, Serialize};

use super::{accuracy_curve, StrategyDataset};
use crate::error::{Error, Result};
use crate::records::CostModel;
use crate::vote::{check_grid, Estimator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Budget {
    Samples(usize),
    Cost(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub budget: Budget,
    pub chosen_strategy: String,
    pub chosen_n: usize,
    pub predicted_accuracy: f64,
    /// Total dataset cost of the choice, when a cost model was involved.
    pub cost: Option<f64>,
}

/// Strategy with the highest dataset accuracy at `n`. Ties go to the
/// strategy listed first.
pub fn best_for_n(dss: &[StrategyDataset], n: usize, est: &Estimator) -> Result<SelectionResult> {
    if dss.is_empty() {
        return Err(Error::Empty("no strategies given".into()));
    }
    let mut best: Option<(usize, f64)> = None;
    for (i, ds) in dss.iter().enumerate() {
        let acc = accuracy_curve(ds, &[n], est)?.points[0].accuracy;
        if best.is_none_or(|(_, b)| acc > b) {
            best = Some((i, acc));
        }
    }
    let (i, acc) = best.unwrap();
    Ok(SelectionResult {
        budget: Budget::Samples(n),
        chosen_strategy: dss[i].strategy_id().to_string(),
        chosen_n: n,
        predicted_accuracy: acc,
        cost: None,
    })
}

/// Best (strategy, n) pair whose total dataset cost stays within `budget`.
///
/// Each strategy is scored by its best accuracy over the affordable grid
/// points. Ties go to the earlier strategy, then to the smaller `n`.
pub fn best_under_cost(
    dss: &[StrategyDataset],
    budget: f64,
    model: &CostModel,
    ns: &[usize],
    est: &Estimator,
) -> Result<SelectionResult> {
    check_grid(ns)?;
    if dss.is_empty() {
        return Err(Error::Empty("no strategies given".into()));
    }
    let mut best: Option<(usize, usize, f64, f64)> = None;
    for (i, ds) in dss.iter().enumerate() {
        let per_round = ds.cost_per_round(model);
        let affordable: Vec<usize> = ns
            .iter()
            .copied()
            .filter(|&n| n as f64 * per_round <= budget)
            .collect();
        if affordable.is_empty() {
            continue;
        }
        let curve = accuracy_curve(ds, &affordable, est)?;
        for p in &curve.points {
            if best.is_none_or(|(_, _, acc, _)| p.accuracy > acc) {
                best = Some((i, p.n, p.accuracy, p.n as f64 * per_round));
            }
        }
    }
    let (i, n, acc, cost) = best.ok_or(Error::NoFeasibleChoice { budget })?;
    Ok(SelectionResult {
        budget: Budget::Cost(budget),
        chosen_strategy: dss[i].strategy_id().to_string(),
        chosen_n: n,
        predicted_accuracy: acc,
        cost: Some(cost),
    })
}
