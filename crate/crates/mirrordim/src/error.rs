use thiserror::Error;

/// Errors reported by the library.
///
/// Domain errors (bad digits, violated hypotheses) are distinguished from
/// resource errors (budget exhausted) and from honest "cannot decide at this
/// precision" outcomes, because callers map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("digit {digit} out of range 0..={max_digit}")]
    DigitOutOfRange { digit: i64, max_digit: i64 },

    #[error("digit {digit} outside alphabet {low}..={high}")]
    DigitOutOfAlphabet { digit: i64, low: i64, high: i64 },

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("pattern is longer than the text ({pattern} > {text})")]
    PatternTooLong { pattern: usize, text: usize },

    #[error("cannot bump word: {reason}")]
    BadBump { reason: String },

    #[error("requested {requested} digits exceeds the prefix budget of {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("no root in (1, {upper}] for this word")]
    NoRoot { upper: u32 },

    #[error("requested tolerance {0} is unattainable within the iteration budget")]
    ToleranceUnattainable(f64),

    #[error("undecidable at current precision: {0}")]
    Undecidable(String),

    #[error("digit {position} of the expansion is undecidable at current precision")]
    UndecidableDigit { position: usize },

    #[error("digit budget of {budget} exhausted before a decision was reached")]
    DigitBudgetExhausted { budget: usize },

    #[error("expansion is not unique (tail {tail_start} violates the lexicographic condition)")]
    NotUnique { tail_start: usize },

    #[error("uniqueness of the expansion is undecided within the digit budget")]
    UniquenessUndecided,

    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedFields(u64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for outcomes that mean "insufficient precision or budget",
    /// as opposed to a caller mistake.
    pub fn is_undecided(&self) -> bool {
        matches!(
            self,
            Error::Undecidable(_)
                | Error::UndecidableDigit { .. }
                | Error::DigitBudgetExhausted { .. }
                | Error::UniquenessUndecided
                | Error::ToleranceUnattainable(_)
                | Error::BudgetExceeded { .. }
        )
    }
}
