//! Polynomial forms for three answers at n = 3 and n = 5, checked against
//! enumeration.

use majvote::vote::{closed_form_majority_prob, exact_majority_prob, AnswerDistribution};

fn main() -> majvote::error::Result<()> {
    for probs in [vec![0.64, 0.35, 0.01], vec![0.6, 0.2, 0.2], vec![0.2, 0.5, 0.3]] {
        let d = AnswerDistribution::new(probs.clone(), 0)?;
        for n in [3, 5] {
            let poly = closed_form_majority_prob(&d, n)?.value;
            let exact = exact_majority_prob(&d, n)?.value;
            println!("{probs:?} n={n}: closed form {poly:.12}, exact {exact:.12}, diff {:.1e}", (poly - exact).abs());
        }
    }

    let two = AnswerDistribution::new(vec![0.7, 0.3], 0)?;
    if let Err(e) = closed_form_majority_prob(&two, 3) {
        println!("two answers: {e}");
    }
    Ok(())
}
