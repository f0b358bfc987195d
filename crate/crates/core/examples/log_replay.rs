//! Sample logs to estimated distributions, then vote replays over the
//! recorded answers.

use majvote::records::{
    estimate_distribution, parse_ground_truth, parse_log, replay_majority, Normalizer, Resampling,
};
use majvote::vote::exact_majority_prob;

const TRUTH: &str = r#"{"question_id":"gsm-17","correct_answer":"42"}"#;

fn log() -> String {
    let answers = ["42", "42", " 42", "41", "42", "", "41", "42", "40", "42"];
    answers
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let answer = if a.is_empty() { "null".to_string() } else { format!("\"{a}\"") };
            format!(
                r#"{{"question_id":"gsm-17","strategy_id":"cot","sample_index":{i},"answer":{answer},"prompt_tokens":120,"completion_tokens":{}}}"#,
                200 + 10 * i
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() -> majvote::error::Result<()> {
    let canon = Normalizer::default();
    let truth = parse_ground_truth(TRUTH.as_bytes(), &canon)?;
    let groups = parse_log(log().as_bytes(), &truth, &canon)?;
    let q = &groups[0];
    println!("{} samples, mean completion tokens {}", q.answers.len(), q.mean_completion_tokens);

    let est = estimate_distribution(q)?;
    for (a, c) in est.answers.iter().zip(&est.counts) {
        println!("  {a:>3}: {c}");
    }
    println!("label: {:?}", est.label().kind());

    for n in [1, 3, 5, 9] {
        let replay = replay_majority(q, n, 2_000, 11, Resampling::WithoutReplacement)?;
        let model = exact_majority_prob(&est.dist, n)?.value;
        println!("n={n}: replay {replay:.4}, model {model:.4}");
    }
    Ok(())
}
