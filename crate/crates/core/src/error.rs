use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// The exact enumeration would be too large. Callers usually retry with
    /// the normal approximation or Monte Carlo.
    #[error(
        "exact enumeration cap exceeded: {answers} nonzero answers, n = {n}, {compositions:.3e} compositions"
    )]
    CapExceeded {
        answers: usize,
        n: usize,
        compositions: f64,
    },

    #[error("closed form needs exactly 3 answers and n in {{3, 5}} (got {answers} answers, n = {n})")]
    WrongArity { answers: usize, n: usize },

    #[error("all probability mass sits on the correct answer")]
    NoWrongMass,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("duplicate record (question {question_id}, strategy {strategy_id}, sample {sample_index})")]
    DuplicateKey {
        question_id: String,
        strategy_id: String,
        sample_index: u64,
    },

    #[error("no ground truth for question {0}")]
    MissingGroundTruth(String),

    #[error("pool has {available} samples, {requested} requested")]
    NotEnoughSamples { available: usize, requested: usize },

    #[error("no strategy fits within budget {budget}")]
    NoFeasibleChoice { budget: f64 },

    #[error("datasets share no question ids: {0}")]
    IdMismatch(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors that come from a computational limit rather than bad input.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
