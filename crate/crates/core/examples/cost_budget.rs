//! Picking a strategy and sample count under a dollar budget.

use majvote::records::CostModel;
use majvote::select::{best_under_cost, QuestionEntry, StrategyDataset};
use majvote::vote::{AnswerDistribution, Estimator};

fn dataset(id: &str, probs: &[&[f64]], prompt: f64, completion: f64) -> StrategyDataset {
    let qs = probs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            QuestionEntry::new(format!("q{i}"), AnswerDistribution::new(p.to_vec(), 0).unwrap())
                .with_tokens(prompt, completion)
        })
        .collect();
    StrategyDataset::new(id, qs).unwrap()
}

fn main() -> majvote::error::Result<()> {
    let qs: &[&[f64]] = &[&[0.64, 0.35, 0.01], &[0.5, 0.3, 0.2], &[0.9, 0.1]];
    let cheap = dataset("short", qs, 80.0, 60.0);
    let long: &[&[f64]] = &[&[0.7, 0.2, 0.1], &[0.6, 0.3, 0.1], &[0.95, 0.05]];
    let rich = dataset("long", long, 300.0, 900.0);
    let dss = [cheap, rich];

    let model = CostModel::gpt_4o_mini();
    for ds in &dss {
        println!("{}: ${:.2e} per round", ds.strategy_id(), ds.cost_per_round(&model));
    }
    let grid: Vec<usize> = (1..=41).step_by(2).collect();
    for budget in [2e-4, 1e-3, 5e-3, 2e-2] {
        let s = best_under_cost(&dss, budget, &model, &grid, &Estimator::exact())?;
        println!(
            "budget ${budget:.0e}: {} x{} -> {:.4} (spends ${:.2e})",
            s.chosen_strategy,
            s.chosen_n,
            s.predicted_accuracy,
            s.cost.unwrap()
        );
    }
    match best_under_cost(&dss, 1e-6, &model, &grid, &Estimator::exact()) {
        Err(e) => println!("tiny budget: {e}"),
        Ok(s) => println!("tiny budget: {s:?}"),
    }
    Ok(())
}
