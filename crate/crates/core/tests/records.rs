use majvote::difficulty::{classify, limit_prob};
use majvote::records::{replay_majority, QuestionSamples, Resampling};
use majvote::select::{accuracy_curve, extreme_performance, StrategyDataset};
use majvote::vote::{exact_majority_prob, monte_carlo_majority_prob, AnswerDistribution, Estimator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pool(dist: &AnswerDistribution, size: usize, seed: u64) -> QuestionSamples {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let answers = (0..size)
        .map(|_| {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            for (i, &p) in dist.probs().iter().enumerate() {
                acc += p;
                if u < acc {
                    return i.to_string();
                }
            }
            (dist.len() - 1).to_string()
        })
        .collect();
    QuestionSamples {
        question_id: "q".into(),
        strategy_id: "s".into(),
        correct_answer: dist.correct_index().to_string(),
        answers,
        mean_prompt_tokens: 0.0,
        mean_completion_tokens: 0.0,
    }
}

#[test]
fn replay_converges_to_exact() {
    let d = AnswerDistribution::new(vec![0.45, 0.35, 0.2], 0).unwrap();
    let s = pool(&d, 10_000, 1);
    let exact = exact_majority_prob(&d, 5).unwrap().value;
    for resampling in [Resampling::WithoutReplacement, Resampling::WithReplacement] {
        let r = replay_majority(&s, 5, 10_000, 2, resampling).unwrap();
        assert!((r - exact).abs() < 0.02, "{resampling:?}: {r} vs {exact}");
    }
}

#[test]
fn full_pool_replay_has_one_multiset() {
    let s = pool(&AnswerDistribution::new(vec![0.6, 0.4], 0).unwrap(), 15, 3);
    let a = replay_majority(&s, 15, 50, 4, Resampling::WithoutReplacement).unwrap();
    let b = replay_majority(&s, 15, 50, 99, Resampling::WithoutReplacement).unwrap();
    assert_eq!(a, b);
    assert!(a == 0.0 || a == 1.0);
}

#[test]
fn limits_agree_with_simulation_at_501() {
    let panel = [
        vec![0.5, 0.3, 0.2],
        vec![0.4, 0.4, 0.2],
        vec![0.35, 0.35, 0.2, 0.1],
        vec![0.3, 0.5, 0.2],
        vec![0.25, 0.25, 0.25, 0.1, 0.15],
    ];
    for (i, p) in panel.iter().enumerate() {
        let d = AnswerDistribution::new(p.clone(), 0).unwrap();
        let mc = monte_carlo_majority_prob(&d, 501, 100_000, i as u64).unwrap().value;
        assert!((mc - limit_prob(&d)).abs() < 0.02, "{p:?}: {mc} vs {}", limit_prob(&d));
    }
}

#[test]
fn dataset_limit_matches_curve_at_501() {
    let dists = [
        vec![0.5, 0.3, 0.2],
        vec![0.4, 0.4, 0.2],
        vec![0.2, 0.6, 0.2],
        vec![0.7, 0.1, 0.1, 0.1],
    ]
    .into_iter()
    .map(|p| AnswerDistribution::new(p, 0).unwrap())
    .collect::<Vec<_>>();
    assert!(dists.iter().any(|d| classify(d).is_hard()));
    let ds = StrategyDataset::from_dists("s", dists);
    let limit = extreme_performance(&ds).unwrap().limit_accuracy;
    let c = accuracy_curve(&ds, &[501], &Estimator::monte_carlo(100_000, 5)).unwrap();
    assert!((c.points[0].accuracy - limit).abs() < 0.02, "{} vs {limit}", c.points[0].accuracy);
}
