//! Constant-time normal approximation next to the exact value, and the
//! estimator switch that falls back to it beyond the enumeration caps.

use majvote::vote::{estimate, exact_majority_prob, normal_approx_prob, AnswerDistribution, Estimator};

fn main() -> majvote::error::Result<()> {
    let d = AnswerDistribution::new(vec![0.64, 0.35, 0.01], 0)?;
    println!("{:>3} {:>10} {:>10} {:>9}", "n", "exact", "approx", "error");
    for n in [1, 5, 10, 20, 40, 60] {
        let e = exact_majority_prob(&d, n)?.value;
        let a = normal_approx_prob(&d, n)?.value;
        println!("{n:>3} {e:>10.6} {a:>10.6} {:>9.6}", (a - e).abs());
    }

    let est = Estimator::exact_with_fallback();
    for n in [59, 60, 61, 500, 5000] {
        let v = estimate(&d, n, &est)?;
        println!("n={n:>4}: {:.6} via {}", v.value, v.method);
    }
    Ok(())
}
