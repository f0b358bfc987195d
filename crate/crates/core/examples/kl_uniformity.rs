//! How far the wrong answers are from being spread evenly.

use majvote::difficulty::kl_to_uniform;
use majvote::vote::AnswerDistribution;

fn main() -> majvote::error::Result<()> {
    for probs in [
        vec![0.6, 0.2, 0.2],
        vec![0.64, 0.35, 0.01],
        vec![0.5, 0.45, 0.03, 0.02],
        vec![0.5, 0.5],
    ] {
        let d = AnswerDistribution::new(probs.clone(), 0)?;
        println!("{probs:?}: {:.6} nats", kl_to_uniform(&d)?);
    }
    let pure = AnswerDistribution::new(vec![1.0, 0.0], 0)?;
    println!("[1.0, 0.0]: {}", kl_to_uniform(&pure).unwrap_err());
    Ok(())
}
