use super::{check_n, AnswerDistribution, Method, VoteProbability};
use crate::error::Result;
use crate::special::normal_cdf;

/// Normal approximation of the vote success probability.
///
/// Treats the margin `Z = x_correct - x_max` between the correct answer and
/// the strongest wrong answer as Gaussian with mean `n (p1 - p_max)` and
/// variance `n (p1 (1 - p1) + p_max (1 - p_max))`, and returns `P(Z > 0)`.
/// Cost is one scan over the answers and does not depend on `n`.
///
/// When `p1 == p_max` the result is exactly 0.5 for any number of tied
/// answers, even though the true large-`n` limit is `1/|S|`.
pub fn normal_approx_prob(dist: &AnswerDistribution, n: usize) -> Result<VoteProbability> {
    check_n(n)?;
    if dist.len() == 1 {
        return Ok(VoteProbability::new(1.0, Method::NormalApprox, n));
    }
    let p1 = dist.correct_prob();
    let pmax = dist.max_wrong_prob();
    let var = p1 * (1.0 - p1) + pmax * (1.0 - pmax);
    let value = if var <= 0.0 {
        if p1 > pmax {
            1.0
        } else if p1 < pmax {
            0.0
        } else {
            0.5
        }
    } else {
        let sd = (var / n as f64).sqrt();
        1.0 - normal_cdf(-(p1 - pmax) / sd)
    };
    Ok(VoteProbability::new(value, Method::NormalApprox, n))
}
