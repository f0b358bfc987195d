use super::{check_n, AnswerDistribution, Method, VoteProbability};
use crate::error::{Error, Result};
use crate::special::{binomial_coefficient, LogFactorials};

/// Limits on the exact enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCaps {
    /// Maximum number of answers with nonzero probability.
    pub max_answers: usize,
    pub max_n: usize,
    /// Maximum number of occurrence vectors, `C(n + m - 1, m - 1)`.
    pub max_compositions: f64,
}

impl Default for ExactCaps {
    fn default() -> Self {
        Self {
            max_answers: 8,
            max_n: 60,
            max_compositions: 1e7,
        }
    }
}

impl ExactCaps {
    /// Checks whether `answers` nonzero answers at sampling time `n` fit.
    pub fn check(&self, answers: usize, n: usize) -> Result<()> {
        let compositions = binomial_coefficient(n + answers - 1, answers - 1);
        if answers > self.max_answers || n > self.max_n || compositions > self.max_compositions {
            return Err(Error::CapExceeded {
                answers,
                n,
                compositions,
            });
        }
        Ok(())
    }
}

/// Weak compositions of `n` into `k` parts, in reverse lexicographic order
/// starting from `(n, 0, ..., 0)`.
///
/// [`WeakCompositions::advance`] updates the parts in place; the `Iterator`
/// impl clones them and is meant for tests and small inputs.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    parts: Vec<usize>,
    started: bool,
    done: bool,
}

impl WeakCompositions {
    pub fn new(n: usize, k: usize) -> Self {
        let mut parts = vec![0; k];
        if let Some(first) = parts.first_mut() {
            *first = n;
        }
        Self {
            parts,
            started: false,
            // Zero parts admit only the empty composition of zero.
            done: k == 0 && n > 0,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Moves to the next composition. Returns false once exhausted; the first
    /// call yields the initial composition.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let k = self.parts.len();
        if k < 2 {
            self.done = true;
            return false;
        }
        // Rightmost nonzero part, excluding the last one.
        let Some(i) = (0..k - 1).rev().find(|&i| self.parts[i] > 0) else {
            self.done = true;
            return false;
        };
        let tail = self.parts[k - 1];
        self.parts[k - 1] = 0;
        self.parts[i] -= 1;
        self.parts[i + 1] = tail + 1;
        true
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().then(|| self.parts.clone())
    }
}

/// Probability that each answer wins the vote, indexed like `dist.probs()`.
///
/// The entries sum to one: every vote returns some answer.
pub fn exact_outcome_probs(dist: &AnswerDistribution, n: usize, caps: &ExactCaps) -> Result<Vec<f64>> {
    check_n(n)?;
    let support = dist.support();
    let mut out = vec![0.0; dist.len()];
    if support.len() == 1 {
        out[support[0]] = 1.0;
        return Ok(out);
    }
    caps.check(support.len(), n)?;

    let log_p: Vec<f64> = support.iter().map(|&i| dist.probs()[i].ln()).collect();
    let lf = LogFactorials::new(n);
    let log_n_fact = lf.get(n);
    let mut wins = vec![0.0; support.len()];
    let mut comps = WeakCompositions::new(n, support.len());
    while comps.advance() {
        let counts = comps.parts();
        let mut log_term = log_n_fact;
        let mut max = 0;
        for (&c, &lp) in counts.iter().zip(&log_p) {
            log_term += c as f64 * lp - lf.get(c);
            max = max.max(c);
        }
        let term = log_term.exp();
        let ties = counts.iter().filter(|&&c| c == max).count();
        let share = term / ties as f64;
        for (w, &c) in wins.iter_mut().zip(counts) {
            if c == max {
                *w += share;
            }
        }
    }
    for (&idx, w) in support.iter().zip(wins) {
        out[idx] = w;
    }
    Ok(out)
}

/// Exact success probability under the multinomial model with default caps.
pub fn exact_majority_prob(dist: &AnswerDistribution, n: usize) -> Result<VoteProbability> {
    exact_majority_prob_with(dist, n, &ExactCaps::default())
}

pub fn exact_majority_prob_with(
    dist: &AnswerDistribution,
    n: usize,
    caps: &ExactCaps,
) -> Result<VoteProbability> {
    check_n(n)?;
    // An answer that never occurs never wins; skip the enumeration.
    if dist.correct_prob() == 0.0 {
        return Ok(VoteProbability::new(0.0, Method::Exact, n));
    }
    let probs = exact_outcome_probs(dist, n, caps)?;
    Ok(VoteProbability::new(probs[dist.correct_index()], Method::Exact, n))
}
