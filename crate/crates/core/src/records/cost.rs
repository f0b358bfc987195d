use super::QuestionSamples;
use crate::error::{Error, Result};

/// Token prices, in currency per token.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    pub prompt_price: f64,
    pub completion_price: f64,
}

impl CostModel {
    pub fn new(prompt_price: f64, completion_price: f64) -> Result<Self> {
        let ok = |p: f64| p.is_finite() && p >= 0.0;
        if !ok(prompt_price) || !ok(completion_price) {
            return Err(Error::InvalidArgument("token prices must be finite and nonnegative".into()));
        }
        Ok(Self {
            prompt_price,
            completion_price,
        })
    }

    /// Prices quoted per million tokens.
    pub fn per_million(prompt: f64, completion: f64) -> Result<Self> {
        Self::new(prompt / 1e6, completion / 1e6)
    }

    /// $0.15 / 1M prompt tokens and $0.60 / 1M completion tokens.
    pub fn gpt_4o_mini() -> Self {
        Self {
            prompt_price: 0.15e-6,
            completion_price: 0.6e-6,
        }
    }

    /// $0.075 / 1M prompt tokens and $0.30 / 1M completion tokens.
    pub fn gemini_15_flash() -> Self {
        Self {
            prompt_price: 0.075e-6,
            completion_price: 0.3e-6,
        }
    }

    /// Cost of a single sample with the given mean token counts.
    pub fn sample_cost(&self, prompt_tokens: f64, completion_tokens: f64) -> f64 {
        prompt_tokens * self.prompt_price + completion_tokens * self.completion_price
    }
}

/// Cost of sampling one question `n` times; linear in `n`.
pub fn cost_of(samples: &QuestionSamples, n: usize, model: &CostModel) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(n as f64 * model.sample_cost(samples.mean_prompt_tokens, samples.mean_completion_tokens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(p: f64, c: f64) -> QuestionSamples {
        QuestionSamples {
            question_id: "q".into(),
            strategy_id: "s".into(),
            correct_answer: "a".into(),
            answers: vec!["a".into()],
            mean_prompt_tokens: p,
            mean_completion_tokens: c,
        }
    }

    #[test]
    fn mini_prices() {
        let s = samples(1000.0, 500.0);
        let one = cost_of(&s, 1, &CostModel::gpt_4o_mini()).unwrap();
        assert!((one - 0.000_45).abs() < 1e-15);
        let two = cost_of(&s, 2, &CostModel::gpt_4o_mini()).unwrap();
        assert_eq!(two, 2.0 * one);
        assert!(cost_of(&s, 0, &CostModel::gpt_4o_mini()).is_err());
        let per_million = CostModel::per_million(0.15, 0.6).unwrap();
        assert!((cost_of(&s, 1, &per_million).unwrap() - one).abs() < 1e-18);
    }

    #[test]
    fn zero_and_invalid_prices() {
        let free = CostModel::new(0.0, 0.0).unwrap();
        assert_eq!(cost_of(&samples(1000.0, 500.0), 7, &free).unwrap(), 0.0);
        assert!(CostModel::new(-1.0, 0.0).is_err());
        assert!(CostModel::per_million(f64::NAN, 0.0).is_err());
    }
}
