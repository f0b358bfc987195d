//! Easy, moderate and hard questions, and the accuracy each converges to.

use majvote::difficulty::{classify, limit_prob, max_gap};
use majvote::vote::{estimate, AnswerDistribution, Estimator};

fn main() -> majvote::error::Result<()> {
    let cases = [
        ("easy", vec![0.5, 0.3, 0.2]),
        ("moderate, two-way tie", vec![0.4, 0.4, 0.2]),
        ("moderate, three-way tie", vec![0.3, 0.3, 0.3, 0.1]),
        ("hard", vec![0.4, 0.45, 0.15]),
    ];
    let est = Estimator::monte_carlo(200_000, 3);
    for (name, probs) in cases {
        let d = AnswerDistribution::new(probs, 0)?;
        let label = classify(&d);
        let at_1001 = estimate(&d, 1001, &est)?;
        println!(
            "{name:<24} kind={:<8} ties={} gap={:.2} limit={:.4} n=1001 -> {:.4}",
            label.kind().as_str(),
            label.tie_count(),
            max_gap(&d),
            limit_prob(&d),
            at_1001.value,
        );
    }
    Ok(())
}
