//! Scenario files: per-strategy accuracy curves and the best strategy per n,
//! predicted with the normal approximation and checked exactly.

use majvote::select::{accuracy_curve, best_for_n, parse_scenario};
use majvote::vote::Estimator;

const SCENARIO: &str = r#"{"strategy_id":"sbp","question_id":"x","probs":[0.64,0.35,0.01],"correct_index":0}
{"strategy_id":"sbp","question_id":"y","probs":[0.55,0.45],"correct_index":0}
{"strategy_id":"cot","question_id":"x","probs":[0.6,0.2,0.2],"correct_index":0}
{"strategy_id":"cot","question_id":"y","probs":[0.3,0.4,0.3],"correct_index":1}
"#;

fn main() -> majvote::error::Result<()> {
    let dss = parse_scenario(SCENARIO.as_bytes())?;
    let grid = [1, 3, 5, 11, 21, 41];
    for ds in &dss {
        let c = accuracy_curve(ds, &grid, &Estimator::exact())?;
        println!("{:<4} {:.4?}", ds.strategy_id(), c.accuracies());
    }
    // The approximation only races the correct answer against the strongest
    // wrong one, so cot's second question (two wrong answers at 0.3) looks
    // better to it than it is.
    println!("\n{:>3} {:>15} {:>15}", "n", "predicted", "exact");
    for n in grid {
        let p = best_for_n(&dss, n, &Estimator::NormalApprox)?;
        let e = best_for_n(&dss, n, &Estimator::exact())?;
        println!(
            "{n:>3} {:>8} {:.4} {:>8} {:.4}",
            p.chosen_strategy, p.predicted_accuracy, e.chosen_strategy, e.predicted_accuracy
        );
    }
    Ok(())
}
