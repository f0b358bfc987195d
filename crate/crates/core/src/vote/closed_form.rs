use super::{AnswerDistribution, Method, VoteProbability};
use crate::error::{Error, Result};

/// Polynomial success probability for three answers at `n = 3` or `n = 5`.
///
/// With `p1` the correct answer's probability and `p2`, `p3` the others:
///
/// ```text
/// n = 3:  3 p1^2 - 2 p1^3 + 2 p1 p2 p3
/// n = 5:  6 p1^5 - 15 p1^4 + 10 p1^3 + 15 p1^2 p2 p3 (p2 + p3)
/// ```
pub fn closed_form_majority_prob(dist: &AnswerDistribution, n: usize) -> Result<VoteProbability> {
    if dist.len() != 3 || !(n == 3 || n == 5) {
        return Err(Error::WrongArity {
            answers: dist.len(),
            n,
        });
    }
    let c = dist.correct_index();
    let p = dist.probs();
    let p1 = p[c];
    let mut others = (0..3).filter(|&i| i != c).map(|i| p[i]);
    let (p2, p3) = (others.next().unwrap(), others.next().unwrap());

    let value = if n == 3 {
        3.0 * p1.powi(2) - 2.0 * p1.powi(3) + 2.0 * p1 * p2 * p3
    } else {
        6.0 * p1.powi(5) - 15.0 * p1.powi(4) + 10.0 * p1.powi(3)
            + 15.0 * p1.powi(2) * p2 * p3 * (p2 + p3)
    };
    Ok(VoteProbability::new(value, Method::ClosedForm, n))
}
