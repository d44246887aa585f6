use thiserror::Error;

use crate::ids::QuestionId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("answer references unknown question {0}")]
    UnknownQuestion(QuestionId),
    #[error("exam has no questions")]
    DegenerateExam,
    #[error("raw score {raw} exceeds total {total}")]
    RawExceedsTotal { raw: u32, total: u32 },
    #[error("subject weights sum to {}.{:02}%, above 100%", hundredths / 100, hundredths % 100)]
    WeightOverflow { hundredths: u64 },
    #[error("current time precedes attempt start")]
    ClockSkew,
    #[error("not enough responses for item analysis")]
    NoData,
    #[error("invalid percent: {0}")]
    InvalidPercent(String),
}
