use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QuestionSamples;
use crate::error::{Error, Result};

/// How each replay trial draws its `n` answers from the recorded pool.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Resampling {
    /// A fresh subset of the pool per trial.
    #[default]
    WithoutReplacement,
    /// Bootstrap draws.
    WithReplacement,
}

/// Mean accuracy of majority votes replayed over recorded answers.
///
/// Each trial draws `n` answers, votes with uniform tie-breaking and scores
/// the winner against the correct answer.
pub fn replay_majority(
    samples: &QuestionSamples,
    n: usize,
    trials: usize,
    seed: u64,
    resampling: Resampling,
) -> Result<f64> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument("n and trials must be at least 1".into()));
    }
    let pool = samples.answers.len();
    if pool < n {
        return Err(Error::NotEnoughSamples {
            available: pool,
            requested: n,
        });
    }
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut correct_flags: Vec<bool> = Vec::new();
    let slots: Vec<usize> = samples
        .answers
        .iter()
        .map(|a| {
            *ids.entry(a.as_str()).or_insert_with(|| {
                correct_flags.push(samples.is_correct(a));
                correct_flags.len() - 1
            })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..pool).collect();
    let mut counts = vec![0usize; correct_flags.len()];
    let mut hits = 0usize;
    for _ in 0..trials {
        counts.iter_mut().for_each(|c| *c = 0);
        match resampling {
            Resampling::WithoutReplacement => {
                let (chosen, _) = order.partial_shuffle(&mut rng, n);
                for &i in chosen.iter() {
                    counts[slots[i]] += 1;
                }
            }
            Resampling::WithReplacement => {
                for _ in 0..n {
                    counts[slots[rng.random_range(0..pool)]] += 1;
                }
            }
        }
        let max = *counts.iter().max().unwrap();
        let modal: Vec<usize> = (0..counts.len()).filter(|&s| counts[s] == max).collect();
        let winner = if modal.len() > 1 {
            modal[rng.random_range(0..modal.len())]
        } else {
            modal[0]
        };
        if correct_flags[winner] {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}
