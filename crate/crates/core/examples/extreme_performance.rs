//! Difficulty mix of a dataset and the accuracy infinite sampling reaches.

use majvote::select::{extreme_performance, mean_kl_to_uniform, StrategyDataset};
use majvote::vote::AnswerDistribution;

fn main() -> majvote::error::Result<()> {
    // 88.12% easy, 0.24% two-way ties, 11.64% hard.
    let mut dists = Vec::new();
    for _ in 0..8812 {
        dists.push(AnswerDistribution::new(vec![0.7, 0.2, 0.1], 0)?);
    }
    for _ in 0..24 {
        dists.push(AnswerDistribution::new(vec![0.45, 0.45, 0.1], 0)?);
    }
    for _ in 0..1164 {
        dists.push(AnswerDistribution::new(vec![0.2, 0.6, 0.2], 0)?);
    }
    let ds = StrategyDataset::from_dists("cot", dists);
    let e = extreme_performance(&ds)?;
    println!(
        "easy {:.2}%  moderate {:.2}%  hard {:.2}%  limit {:.2}%",
        100.0 * e.easy_frac,
        100.0 * e.moderate_frac,
        100.0 * e.hard_frac,
        100.0 * e.limit_accuracy
    );
    let kl = mean_kl_to_uniform(&ds);
    println!("mean KL to uniform {:.4} over {} questions", kl.mean_kl, kl.questions);
    Ok(())
}
