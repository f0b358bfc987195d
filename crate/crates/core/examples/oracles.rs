//! Oracle improvements: answer hard questions once, pick the best strategy
//! per question, or both.

use majvote::select::{accuracy_curve, adaptive_curve, combined_curve, dynamic_curve, StrategyDataset};
use majvote::vote::{AnswerDistribution, Estimator};

fn ds(id: &str, probs: &[&[f64]]) -> StrategyDataset {
    StrategyDataset::from_dists(id, probs.iter().map(|p| AnswerDistribution::new(p.to_vec(), 0).unwrap()).collect())
}

fn main() -> majvote::error::Result<()> {
    let a = ds("a", &[&[0.6, 0.4], &[0.4, 0.45, 0.15], &[0.3, 0.3, 0.4]]);
    let b = ds("b", &[&[0.45, 0.55], &[0.7, 0.3], &[0.35, 0.65]]);
    let grid = [1, 5, 21, 101, 301];
    let est = Estimator::exact_with_fallback();
    let dss = [a, b];

    for ds in &dss {
        println!("vanilla  {}: {:.4?}", ds.strategy_id(), accuracy_curve(ds, &grid, &est)?.accuracies());
        println!("adaptive {}: {:.4?}", ds.strategy_id(), adaptive_curve(ds, &grid, &est)?.accuracies());
    }
    println!("dynamic   : {:.4?}", dynamic_curve(&dss, &grid, &est)?.accuracies());
    println!("combined  : {:.4?}", combined_curve(&dss, &grid, &est)?.accuracies());
    Ok(())
}
