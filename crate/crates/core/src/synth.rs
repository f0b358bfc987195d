//! Synthetic sample logs drawn from planted answer distributions.

use std::collections::HashMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::records::SampleRecord;
use crate::select::StrategyDataset;
use crate::vote::AnswerDistribution;

/// Label written for answer `index` of `dist`: `"a*"` for the correct
/// answer and `"a{index}"` otherwise.
pub fn answer_label(dist: &AnswerDistribution, index: usize) -> String {
    if index == dist.correct_index() {
        "a*".to_string()
    } else {
        format!("a{index}")
    }
}

fn draw<R: Rng>(dist: &AnswerDistribution, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in dist.probs().iter().enumerate() {
        if p > 0.0 {
            acc += p;
            last = i;
            if u < acc {
                return i;
            }
        }
    }
    last
}

#[derive(Serialize)]
struct TruthOut<'a> {
    question_id: &'a str,
    correct_answer: &'a str,
}

/// Writes `samples` i.i.d. records per (strategy, question) to `log`, and
/// one ground-truth line per question to `truth`. Output depends only on the
/// inputs and `seed`.
pub fn synthesize<L: Write, T: Write>(
    dss: &[StrategyDataset],
    samples: usize,
    seed: u64,
    mut log: L,
    mut truth: T,
) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples per question must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut truth_order: Vec<&str> = Vec::new();
    let mut truth_seen: HashMap<&str, ()> = HashMap::new();
    for ds in dss {
        for q in ds.questions() {
            if truth_seen.insert(&q.question_id, ()).is_none() {
                truth_order.push(&q.question_id);
            }
            let prompt_tokens = q.mean_prompt_tokens.round() as u64;
            let completion_tokens = q.mean_completion_tokens.round() as u64;
            for sample_index in 0..samples {
                let answer = answer_label(&q.dist, draw(&q.dist, &mut rng));
                let record = SampleRecord {
                    question_id: q.question_id.clone(),
                    strategy_id: ds.strategy_id().to_string(),
                    sample_index: sample_index as u64,
                    answer: Some(answer),
                    prompt_tokens,
                    completion_tokens,
                };
                serde_json::to_writer(&mut log, &record).map_err(std::io::Error::from)?;
                log.write_all(b"\n")?;
            }
        }
    }
    for qid in truth_order {
        let row = TruthOut {
            question_id: qid,
            correct_answer: "a*",
        };
        serde_json::to_writer(&mut truth, &row).map_err(std::io::Error::from)?;
        truth.write_all(b"\n")?;
    }
    log.flush()?;
    truth.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::{estimate_distribution, parse_ground_truth, parse_log, Normalizer};

    fn plant(p: &[f64], c: usize) -> Vec<StrategyDataset> {
        vec![StrategyDataset::from_dists("s", vec![AnswerDistribution::new(p.to_vec(), c).unwrap()])]
    }

    fn run(dss: &[StrategyDataset], samples: usize, seed: u64) -> (Vec<u8>, Vec<u8>) {
        let (mut log, mut truth) = (Vec::new(), Vec::new());
        synthesize(dss, samples, seed, &mut log, &mut truth).unwrap();
        (log, truth)
    }

    #[test]
    fn certain_plant_gives_identical_answers() {
        let (log, truth) = run(&plant(&[1.0], 0), 20, 1);
        let t = parse_ground_truth(truth.as_slice(), &Normalizer::default()).unwrap();
        let groups = parse_log(log.as_slice(), &t, &Normalizer::default()).unwrap();
        assert!(groups[0].answers.iter().all(|a| a == "a*"));
        assert_eq!(groups[0].answers.len(), 20);
    }

    #[test]
    fn estimates_recover_plant() {
        let (log, truth) = run(&plant(&[0.4, 0.6], 1), 10_000, 8);
        let t = parse_ground_truth(truth.as_slice(), &Normalizer::default()).unwrap();
        let groups = parse_log(log.as_slice(), &t, &Normalizer::default()).unwrap();
        let e = estimate_distribution(&groups[0]).unwrap();
        let p_correct = e.dist.correct_prob();
        assert!((p_correct - 0.6).abs() < 0.02, "{p_correct}");
    }

    #[test]
    fn byte_identical_for_seed() {
        let dss = plant(&[0.5, 0.3, 0.2], 0);
        assert_eq!(run(&dss, 100, 3), run(&dss, 100, 3));
        assert_ne!(run(&dss, 100, 3).0, run(&dss, 100, 4).0);
    }

    #[test]
    fn zero_probability_answers_never_drawn() {
        let (log, _) = run(&plant(&[0.5, 0.0, 0.5], 0), 2000, 2);
        assert!(!String::from_utf8(log).unwrap().contains("\"a1\""));
    }
}
