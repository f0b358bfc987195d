//! Seeded simulation of majority votes, with its standard error.

use majvote::vote::{exact_majority_prob, monte_carlo_majority_prob, simulate_vote, AnswerDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> majvote::error::Result<()> {
    let d = AnswerDistribution::new(vec![0.2, 0.8], 1)?;
    let exact = exact_majority_prob(&d, 3)?.value;
    for trials in [1_000, 100_000, 1_000_000] {
        let mc = monte_carlo_majority_prob(&d, 3, trials, 7)?;
        let se = mc.stderr.unwrap();
        println!(
            "trials={trials:>8}: {:.6} ± {se:.6} (exact {exact:.6}, {:.1} stderr away)",
            mc.value,
            (mc.value - exact).abs() / se
        );
    }

    // Same seed, same answer.
    let again = monte_carlo_majority_prob(&d, 3, 1_000, 7)?;
    assert_eq!(again, monte_carlo_majority_prob(&d, 3, 1_000, 7)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let wins: Vec<usize> = (0..10).map(|_| simulate_vote(&d, 3, &mut rng)).collect::<Result<_, _>>()?;
    println!("ten single votes: {wins:?}");
    Ok(())
}
