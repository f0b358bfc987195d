use super::{
    exact_majority_prob_with, monte_carlo_majority_prob, normal_approx_prob, AnswerDistribution,
    ExactCaps, Method, VoteProbability,
};
use crate::error::{Error, Result};
use crate::seed::derive_seed;

/// Per-question estimator selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimator {
    /// Exact enumeration. With `fallback`, inputs over the caps use the
    /// normal approximation instead of failing.
    Exact { caps: ExactCaps, fallback: bool },
    NormalApprox,
    /// Seeded simulation. Each `n` gets its own stream derived from `seed`.
    MonteCarlo { trials: usize, seed: u64 },
}

impl Estimator {
    pub fn exact() -> Self {
        Estimator::Exact {
            caps: ExactCaps::default(),
            fallback: false,
        }
    }

    pub fn exact_with_fallback() -> Self {
        Estimator::Exact {
            caps: ExactCaps::default(),
            fallback: true,
        }
    }

    pub fn monte_carlo(trials: usize, seed: u64) -> Self {
        Estimator::MonteCarlo { trials, seed }
    }

    pub fn method(&self) -> Method {
        match self {
            Estimator::Exact { .. } => Method::Exact,
            Estimator::NormalApprox => Method::NormalApprox,
            Estimator::MonteCarlo { .. } => Method::MonteCarlo,
        }
    }

    /// Same estimator with the Monte Carlo seed re-derived from `key`, so
    /// distinct questions or strategies draw independent streams.
    pub fn keyed(&self, key: &[u64]) -> Self {
        match *self {
            Estimator::MonteCarlo { trials, seed } => {
                let mut parts = vec![seed];
                parts.extend_from_slice(key);
                Estimator::MonteCarlo {
                    trials,
                    seed: derive_seed(&parts),
                }
            }
            other => other,
        }
    }
}

/// Success probability of one distribution at one `n`.
pub fn estimate(dist: &AnswerDistribution, n: usize, est: &Estimator) -> Result<VoteProbability> {
    match *est {
        Estimator::Exact { caps, fallback } => match exact_majority_prob_with(dist, n, &caps) {
            Err(Error::CapExceeded { .. }) if fallback => normal_approx_prob(dist, n),
            other => other,
        },
        Estimator::NormalApprox => normal_approx_prob(dist, n),
        Estimator::MonteCarlo { trials, seed } => {
            monte_carlo_majority_prob(dist, n, trials, derive_seed(&[seed, n as u64]))
        }
    }
}

pub(crate) fn check_grid(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("grid of sampling times is empty".into()));
    }
    if ns[0] == 0 {
        return Err(Error::InvalidArgument("sampling times must be at least 1".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// One estimate per grid point. Under `Estimator::Exact` with fallback the
/// method tag of each point shows which estimator actually ran.
pub fn scaling_curve(
    dist: &AnswerDistribution,
    ns: &[usize],
    est: &Estimator,
) -> Result<Vec<VoteProbability>> {
    check_grid(ns)?;
    ns.iter().map(|&n| estimate(dist, n, est)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[f64], c: usize) -> AnswerDistribution {
        AnswerDistribution::new(p.to_vec(), c).unwrap()
    }

    #[test]
    fn worked_curves() {
        let sbp = dist(&[0.64, 0.35, 0.01], 0);
        let curve = scaling_curve(&sbp, &[1, 3, 5], &Estimator::exact()).unwrap();
        let want = [0.640, 0.709, 0.757];
        for (p, w) in curve.iter().zip(want) {
            assert!((p.value - w).abs() < 0.0005);
        }
        let one = dist(&[1.0], 0);
        for est in [Estimator::exact(), Estimator::NormalApprox, Estimator::monte_carlo(100, 1)] {
            let c = scaling_curve(&one, &[1, 10, 100], &est).unwrap();
            assert!(c.iter().all(|p| p.value == 1.0));
        }
        let hard = dist(&[0.4, 0.45, 0.15], 0);
        let c = scaling_curve(&hard, &[1, 3], &Estimator::exact()).unwrap();
        assert!((c[0].value - 0.400).abs() < 1e-12);
        assert!((c[1].value - 0.406).abs() < 1e-12);
    }

    #[test]
    fn fallback_only_when_enabled() {
        let d = dist(&[0.6, 0.4], 0);
        assert!(matches!(
            scaling_curve(&d, &[1, 100], &Estimator::exact()),
            Err(Error::CapExceeded { .. })
        ));
        let c = scaling_curve(&d, &[1, 100], &Estimator::exact_with_fallback()).unwrap();
        assert_eq!(c[0].method, Method::Exact);
        assert_eq!(c[1].method, Method::NormalApprox);
    }

    #[test]
    fn grid_validation() {
        let d = dist(&[0.6, 0.4], 0);
        assert!(scaling_curve(&d, &[], &Estimator::NormalApprox).is_err());
        assert!(scaling_curve(&d, &[3, 3], &Estimator::NormalApprox).is_err());
        assert!(scaling_curve(&d, &[5, 3], &Estimator::NormalApprox).is_err());
        assert!(scaling_curve(&d, &[0, 3], &Estimator::NormalApprox).is_err());
    }
}
