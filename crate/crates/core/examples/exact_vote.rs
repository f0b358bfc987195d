//! Exact probability that a majority vote over `n` samples lands on the
//! correct answer, by enumerating occurrence vectors.

use majvote::vote::{exact_majority_prob, exact_outcome_probs, AnswerDistribution, ExactCaps};

fn main() -> majvote::error::Result<()> {
    let sbp = AnswerDistribution::new(vec![0.64, 0.35, 0.01], 0)?;
    let cot = AnswerDistribution::new(vec![0.6, 0.2, 0.2], 0)?;

    println!("{:>3} {:>10} {:>10}", "n", "sbp", "cot");
    for n in [1, 3, 5, 7, 9, 15, 25] {
        let a = exact_majority_prob(&sbp, n)?.value;
        let b = exact_majority_prob(&cot, n)?.value;
        println!("{n:>3} {a:>10.6} {b:>10.6}");
    }

    // Win probability of every answer, ties shared evenly.
    let wins = exact_outcome_probs(&sbp, 4, &ExactCaps::default())?;
    println!("\nwinner distribution at n=4: {wins:.6?}");
    println!("sum = {:.12}", wins.iter().sum::<f64>());

    // Past the enumeration caps the call refuses instead of guessing.
    let wide = AnswerDistribution::from_weights(vec![1.0; 12], 0)?;
    match exact_majority_prob(&wide, 5) {
        Err(e) => println!("\n12 answers: {e}"),
        Ok(v) => println!("\n12 answers: {}", v.value),
    }
    Ok(())
}
