//! When a strategy that starts behind overtakes another one as n grows.

use majvote::difficulty::{crossover_condition, find_crossover_n};
use majvote::vote::{AnswerDistribution, Estimator};

fn main() -> majvote::error::Result<()> {
    let sbp = AnswerDistribution::new(vec![0.64, 0.35, 0.01], 0)?;
    let cot = AnswerDistribution::new(vec![0.6, 0.2, 0.2], 0)?;

    let v = find_crossover_n(&sbp, &cot, &[1, 3, 5, 7], &Estimator::exact())?;
    println!("sbp -> cot: condition {}, first overtaken at n={:?}", v.condition_holds, v.n0);

    let back = find_crossover_n(&cot, &sbp, &[1, 3, 5, 7], &Estimator::exact())?;
    println!("cot -> sbp: condition {}, n0={:?}", back.condition_holds, back.n0);
    println!("sbp vs itself: {}", crossover_condition(&sbp, &sbp));
    Ok(())
}
