//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least two contraction ratios, got {0}")]
    EmptyOrSingleton(usize),

    #[error("contraction ratio {value} at index {index} is outside (0, 1)")]
    RatioOutOfRange { index: usize, value: f64 },

    #[error("letter {letter} outside alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },

    #[error("resolution r = {0} must lie in (0, 1)")]
    InvalidResolution(f64),

    /// Enumeration would produce more cylinders than the configured cap.
    /// Signals that the requested resolution or depth is too fine.
    #[error("enumeration exceeded the budget of {budget} cylinders")]
    BudgetExceeded { budget: usize },

    #[error("condition (B') fails: neither extent endpoint fiber meets a unique piece")]
    ConditionBPrimeFails,

    #[error("strong separation not certified at depth {depth}; closest first-generation pair ({i}, {j})")]
    NotSeparated { depth: u32, i: usize, j: usize },

    #[error("aspect target C = {target} needs chain depth k = {required}, beyond cap {cap}")]
    AspectUnreachable { target: f64, required: u32, cap: u32 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the enumeration budget, which the CLI
    /// reports with a distinct exit code.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
