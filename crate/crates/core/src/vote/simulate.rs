use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;

use super::{check_n, AnswerDistribution, OccurrenceVector, VoteProbability};
use crate::error::{Error, Result};

/// Draws occurrence vectors for one distribution.
///
/// The counts are generated as a chain of conditional binomials, which has
/// the same law as tallying `n` i.i.d. categorical draws but costs O(m) per
/// round instead of O(n).
struct OccurrenceSampler {
    support: Vec<usize>,
    /// `p_j / (p_j + p_{j+1} + ...)` over the support.
    conditional: Vec<f64>,
    len: usize,
}

impl OccurrenceSampler {
    fn new(dist: &AnswerDistribution) -> Self {
        let support = dist.support();
        let p = dist.probs();
        let mut conditional = vec![0.0; support.len()];
        let mut tail = 0.0;
        for (k, &i) in support.iter().enumerate().rev() {
            tail += p[i];
            conditional[k] = (p[i] / tail).clamp(0.0, 1.0);
        }
        if let Some(last) = conditional.last_mut() {
            *last = 1.0;
        }
        Self {
            support,
            conditional,
            len: dist.len(),
        }
    }

    fn fill<R: Rng + ?Sized>(&self, n: usize, rng: &mut R, counts: &mut [usize]) {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut remaining = n as u64;
        for (k, &i) in self.support.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            let q = self.conditional[k];
            let draw = if q >= 1.0 {
                remaining
            } else {
                rng.sample(Binomial::new(remaining, q).expect("conditional probability in [0, 1]"))
            };
            counts[i] = draw as usize;
            remaining -= draw;
        }
    }
}

/// Counts of each answer over `n` i.i.d. samples from `dist`.
pub fn sample_occurrences<R: Rng + ?Sized>(
    dist: &AnswerDistribution,
    n: usize,
    rng: &mut R,
) -> OccurrenceVector {
    let sampler = OccurrenceSampler::new(dist);
    let mut counts = vec![0; sampler.len];
    sampler.fill(n, rng, &mut counts);
    OccurrenceVector::new(counts)
}

/// Majority vote over given counts, breaking ties uniformly at random.
pub fn vote_from_occurrences<R: Rng + ?Sized>(occ: &OccurrenceVector, rng: &mut R) -> usize {
    pick_modal(occ.counts(), rng)
}

fn pick_modal<R: Rng + ?Sized>(counts: &[usize], rng: &mut R) -> usize {
    let max = counts.iter().copied().max().unwrap_or(0);
    let ties = counts.iter().filter(|&&c| c == max).count();
    let chosen = if ties > 1 { rng.random_range(0..ties) } else { 0 };
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == max)
        .nth(chosen)
        .map(|(i, _)| i)
        .expect("modal set is nonempty")
}

/// One simulated majority vote; returns the index of the winning answer.
pub fn simulate_vote<R: Rng + ?Sized>(dist: &AnswerDistribution, n: usize, rng: &mut R) -> Result<usize> {
    check_n(n)?;
    let occ = sample_occurrences(dist, n, rng);
    Ok(vote_from_occurrences(&occ, rng))
}

/// Fraction of `trials` simulated votes that return the correct answer.
pub fn monte_carlo_majority_prob(
    dist: &AnswerDistribution,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<VoteProbability> {
    check_n(n)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = OccurrenceSampler::new(dist);
    let mut counts = vec![0; dist.len()];
    let correct = dist.correct_index();
    let mut hits = 0usize;
    for _ in 0..trials {
        sampler.fill(n, &mut rng, &mut counts);
        if pick_modal(&counts, &mut rng) == correct {
            hits += 1;
        }
    }
    let value = hits as f64 / trials as f64;
    let stderr = (value * (1.0 - value) / trials as f64).sqrt();
    Ok(VoteProbability::monte_carlo(value, stderr, n))
}
