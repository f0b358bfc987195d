use majvote::difficulty::{classify, crossover_condition, kl_to_uniform, limit_prob, max_gap};
use majvote::records::{cost_of, estimate_distribution, CostModel, QuestionSamples};
use majvote::select::{
    accuracy_curve, adaptive_curve, best_for_n, best_under_cost, combined_curve, dominance_count,
    dynamic_curve, StrategyDataset,
};
use majvote::vote::{
    closed_form_majority_prob, exact_majority_prob, exact_outcome_probs, monte_carlo_majority_prob,
    AnswerDistribution, ExactCaps, Estimator,
};
use proptest::prelude::*;

fn dist(max_answers: usize) -> impl Strategy<Value = AnswerDistribution> {
    prop::collection::vec(0.01f64..1.0, 1..=max_answers).prop_flat_map(|w| {
        let m = w.len();
        (Just(w), 0..m).prop_map(|(w, c)| AnswerDistribution::from_weights(w, c).unwrap())
    })
}

fn three() -> impl Strategy<Value = AnswerDistribution> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("some mass", |(a, b, c)| a + b + c > 1e-6)
        .prop_map(|(a, b, c)| AnswerDistribution::from_weights(vec![a, b, c], 0).unwrap())
}

fn dataset(id: &'static str, n: usize) -> impl Strategy<Value = StrategyDataset> {
    prop::collection::vec(dist(4), n).prop_map(move |ds| StrategyDataset::from_dists(id, ds))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_enumeration(d in three()) {
        for n in [3, 5] {
            let a = closed_form_majority_prob(&d, n).unwrap().value;
            let b = exact_majority_prob(&d, n).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn winner_probabilities_sum_to_one(d in dist(6), n in 1usize..16) {
        let sum: f64 = (0..d.len())
            .map(|c| exact_majority_prob(&d.with_correct(c).unwrap(), n).unwrap().value)
            .sum();
        prop_assert!((sum - 1.0).abs() < 1e-9);
        let outcome: f64 = exact_outcome_probs(&d, n, &ExactCaps::default()).unwrap().iter().sum();
        prop_assert!((outcome - 1.0).abs() < 1e-9);
    }

    #[test]
    fn easy_and_moderate_curves_do_not_decrease(d in dist(4)) {
        prop_assume!(!classify(&d).is_hard());
        let mut prev = 0.0;
        for n in 1..=25 {
            let v = exact_majority_prob(&d, n).unwrap().value;
            prop_assert!(v >= prev - 1e-12, "n={n}: {v} < {prev}");
            prev = v;
        }
    }

    #[test]
    fn monte_carlo_within_four_stderr(d in dist(4), n in 1usize..12, seed in any::<u64>()) {
        let exact = exact_majority_prob(&d, n).unwrap().value;
        let mc = monte_carlo_majority_prob(&d, n, 20_000, seed).unwrap();
        let tol = 4.0 * mc.stderr.unwrap().max(1e-4);
        prop_assert!((mc.value - exact).abs() <= tol, "{} vs {exact}", mc.value);
    }

    #[test]
    fn classify_ignores_wrong_answer_order(w in prop::collection::vec(0.01f64..1.0, 2..6), seed in any::<u64>()) {
        let d = AnswerDistribution::from_weights(w.clone(), 0).unwrap();
        let mut wrong = w[1..].to_vec();
        let k = wrong.len();
        wrong.rotate_left((seed % k as u64) as usize);
        wrong.reverse();
        let mut p = vec![w[0]];
        p.extend(wrong);
        let e = AnswerDistribution::from_weights(p, 0).unwrap();
        prop_assert_eq!(classify(&d), classify(&e));
        prop_assert_eq!(limit_prob(&d), limit_prob(&e));
    }

    #[test]
    fn kl_nonnegative(d in dist(6)) {
        if let Ok(kl) = kl_to_uniform(&d) {
            prop_assert!(kl >= -1e-15);
        }
    }

    #[test]
    fn kl_zero_on_even_wrong_answers(p in 0.01f64..0.99, k in 1usize..6) {
        let mut probs = vec![p];
        probs.extend(std::iter::repeat_n((1.0 - p) / k as f64, k));
        let d = AnswerDistribution::new(probs, 0).unwrap();
        prop_assert!(kl_to_uniform(&d).unwrap().abs() < 1e-12);
    }

    #[test]
    fn no_self_crossover(d in dist(5)) {
        prop_assert!(!crossover_condition(&d, &d));
    }

    #[test]
    fn max_gap_in_unit_range(d in dist(6)) {
        let g = max_gap(&d);
        prop_assert!((0.0..=1.0).contains(&g));
    }

    #[test]
    fn dynamic_and_combined_dominate(a in dataset("a", 4), b in dataset("b", 4)) {
        let grid = [1, 3, 5, 11, 25];
        let est = Estimator::exact();
        let dss = [a.clone(), b.clone()];
        let dynamic = dynamic_curve(&dss, &grid, &est).unwrap().accuracies();
        let combined = combined_curve(&dss, &grid, &est).unwrap().accuracies();
        for ds in &dss {
            let vanilla = accuracy_curve(ds, &grid, &est).unwrap().accuracies();
            let adaptive = adaptive_curve(ds, &grid, &est).unwrap().accuracies();
            for i in 0..grid.len() {
                prop_assert!(dynamic[i] >= vanilla[i] - 1e-12);
                prop_assert!(combined[i] >= adaptive[i] - 1e-12);
            }
        }
        prop_assert_eq!(dominance_count(&a, &a).unwrap(), 0);
    }

    #[test]
    fn duplicated_strategy_does_not_change_choice(a in dataset("a", 3), b in dataset("b", 3), n in 1usize..20) {
        let est = Estimator::exact();
        let once = best_for_n(&[a.clone(), b.clone()], n, &est).unwrap();
        let copy = StrategyDataset::new("a2", a.questions().to_vec()).unwrap();
        let twice = best_for_n(&[a.clone(), copy, b.clone()], n, &est).unwrap();
        prop_assert_eq!(once.chosen_strategy, twice.chosen_strategy);
        prop_assert_eq!(once.predicted_accuracy, twice.predicted_accuracy);
    }

    #[test]
    fn unlimited_budget_matches_grid_max_on_monotone_data(
        a in prop::collection::vec(dist(4), 3),
        b in prop::collection::vec(dist(4), 3),
    ) {
        // Easy or moderate everywhere, so curves are non-decreasing and the
        // largest affordable n is the best one.
        let tame = |ds: Vec<AnswerDistribution>| {
            ds.into_iter()
                .map(|d| {
                    let top = d.probs().iter().cloned().fold(0.0, f64::max);
                    let c = d.probs().iter().position(|&p| p == top).unwrap();
                    d.with_correct(c).unwrap()
                })
                .collect::<Vec<_>>()
        };
        let dss = [StrategyDataset::from_dists("a", tame(a)), StrategyDataset::from_dists("b", tame(b))];
        let grid = [1, 3, 5, 9, 15];
        let est = Estimator::exact();
        let unlimited = best_under_cost(&dss, f64::INFINITY, &CostModel::gpt_4o_mini(), &grid, &est).unwrap();
        let at_max = best_for_n(&dss, 15, &est).unwrap();
        prop_assert!((unlimited.predicted_accuracy - at_max.predicted_accuracy).abs() < 1e-12);
    }

    #[test]
    fn cost_additive_and_homogeneous(
        prompt in 0.0f64..5000.0,
        completion in 0.0f64..5000.0,
        n1 in 1usize..50,
        n2 in 1usize..50,
        scale in 0.1f64..10.0,
    ) {
        let s = QuestionSamples {
            question_id: "q".into(),
            strategy_id: "s".into(),
            correct_answer: "1".into(),
            answers: vec!["1".into()],
            mean_prompt_tokens: prompt,
            mean_completion_tokens: completion,
        };
        let m = CostModel::per_million(0.15, 0.6).unwrap();
        let sum = cost_of(&s, n1, &m).unwrap() + cost_of(&s, n2, &m).unwrap();
        let joint = cost_of(&s, n1 + n2, &m).unwrap();
        prop_assert!((sum - joint).abs() <= 1e-12 * joint.max(1e-12));
        let scaled = CostModel::per_million(0.15 * scale, 0.6 * scale).unwrap();
        let a = cost_of(&s, n1, &scaled).unwrap();
        let b = scale * cost_of(&s, n1, &m).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.max(1e-12));
    }

    #[test]
    fn estimates_are_valid_rationals(answers in prop::collection::vec(0u8..5, 1..60), correct in 0u8..6) {
        let s = QuestionSamples {
            question_id: "q".into(),
            strategy_id: "s".into(),
            correct_answer: correct.to_string(),
            answers: answers.iter().map(|a| a.to_string()).collect(),
            mean_prompt_tokens: 0.0,
            mean_completion_tokens: 0.0,
        };
        let e = estimate_distribution(&s).unwrap();
        let total = answers.len() as f64;
        prop_assert!((e.dist.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (a, &c) in e.answers.iter().zip(&e.counts) {
            let want = answers.iter().filter(|x| x.to_string() == *a).count();
            prop_assert_eq!(c, want);
        }
        for (p, &c) in e.dist.probs().iter().zip(&e.counts) {
            prop_assert!((p - c as f64 / total).abs() < 1e-12);
        }
        prop_assert_eq!(&e.answers[e.dist.correct_index()], &correct.to_string());
    }
}
