//! Assessment logic for mock-board examinations.
//!
//! Everything in this crate is a pure function of its inputs: grading,
//! weighting, pass/fail outcomes, deterministic presentation shuffling,
//! timer arithmetic and classical item analysis. Storage and networking
//! live in sibling crates.

mod error;
pub mod grading;
pub mod ids;
pub mod items;
pub mod model;
pub mod percent;
pub mod shuffle;
pub mod student;
pub mod timing;

pub use error::CoreError;
pub use grading::{
    grade, overall_rating, subject_outcome, weighted_score, Outcome, OverallRating, ScorePart,
};
pub use ids::{AccountId, AnnouncementId, AttemptId, CourseId, ExamId, MajorId, QuestionId};
pub use items::{difficulty_index, discrimination_index, item_stats, ItemStats, Response};
pub use model::{Attempt, AttemptStatus, Exam, Question};
pub use percent::{Percent, Points, WeightedScore};
pub use shuffle::{presentation_order, Presentation, SplitMix64};
pub use student::validate_student_number;
pub use timing::remaining_seconds;
