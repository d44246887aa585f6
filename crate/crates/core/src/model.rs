//! Exams, questions and attempts.

use std::collections::BTreeMap;

use chrono::{DateTime, Duration, NaiveDate, Utc};
use serde::{Deserialize, Serialize};

use crate::grading::Outcome;
use crate::ids::{AccountId, AttemptId, CourseId, ExamId, MajorId, QuestionId};
use crate::percent::{Percent, Points};
use crate::shuffle::{presentation_order, Presentation};

/// Field name to human-readable problem.
pub type FieldErrors = BTreeMap<String, String>;

pub const MIN_CHOICES: usize = 2;
pub const MAX_CHOICES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exam {
    pub exam_id: ExamId,
    pub course_id: CourseId,
    pub major_id: Option<MajorId>,
    pub name: String,
    pub instructions: String,
    pub exam_date: NaiveDate,
    pub reexam_date: Option<NaiveDate>,
    pub duration_minutes: u32,
    pub passing_rate: Percent,
    pub weight: Percent,
    pub question_ids: Vec<QuestionId>,
    pub created_at: DateTime<Utc>,
    pub updated_at: Option<DateTime<Utc>>,
}

impl Exam {
    pub fn validate(&self) -> FieldErrors {
        let mut errors = FieldErrors::new();
        if self.name.trim().is_empty() {
            errors.insert("name".into(), "exam name is required".into());
        }
        if self.duration_minutes == 0 {
            errors.insert(
                "duration_minutes".into(),
                "time limit must be at least 1 minute".into(),
            );
        }
        if self.passing_rate.is_zero() {
            errors.insert("passing_rate".into(), "passing rate must be above 0".into());
        }
        if self.weight.is_zero() {
            errors.insert("weight".into(), "weight must be above 0".into());
        }
        if let Some(reexam) = self.reexam_date {
            if reexam < self.exam_date {
                errors.insert(
                    "reexam_date".into(),
                    "re-examination date precedes examination date".into(),
                );
            }
        }
        errors
    }

    /// Examinees can only open exams that have at least one question.
    pub fn is_openable(&self) -> bool {
        !self.question_ids.is_empty()
    }

    /// Time limit rendered `H:MM`.
    pub fn time_limit_display(&self) -> String {
        format!(
            "{}:{:02}",
            self.duration_minutes / 60,
            self.duration_minutes % 60
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub question_id: QuestionId,
    pub exam_id: ExamId,
    pub stem: String,
    pub choices: Vec<String>,
    pub correct_index: u8,
    pub category: Option<String>,
}

impl Question {
    pub fn validate(&self) -> FieldErrors {
        let mut errors = FieldErrors::new();
        if self.stem.trim().is_empty() {
            errors.insert("stem".into(), "question text is required".into());
        }
        let n = self.choices.len();
        if !(MIN_CHOICES..=MAX_CHOICES).contains(&n) {
            errors.insert(
                "choices".into(),
                format!("between {MIN_CHOICES} and {MAX_CHOICES} choices required, got {n}"),
            );
        } else if self.choices.iter().any(|c| c.trim().is_empty()) {
            errors.insert("choices".into(), "choices must not be blank".into());
        }
        if usize::from(self.correct_index) >= n {
            errors.insert(
                "correct_index".into(),
                "correct answer must reference a choice".into(),
            );
        }
        errors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AttemptStatus {
    InProgress,
    Passed,
    Failed,
}

impl From<Outcome> for AttemptStatus {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Passed => AttemptStatus::Passed,
            Outcome::Failed => AttemptStatus::Failed,
        }
    }
}

/// One examinee's timed run at one exam.
///
/// The question list, weight and passing rate are captured when the attempt
/// starts so later edits to the exam do not change what was presented.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub attempt_id: AttemptId,
    pub exam_id: ExamId,
    pub examinee_id: AccountId,
    pub attempt_no: u8,
    pub seed: u64,
    pub question_ids: Vec<QuestionId>,
    pub weight: Percent,
    pub passing_rate: Percent,
    pub started_at: DateTime<Utc>,
    pub deadline: DateTime<Utc>,
    pub submitted_at: Option<DateTime<Utc>>,
    /// Authored choice index per question.
    pub answers: BTreeMap<QuestionId, u8>,
    pub raw_score: u32,
    pub weighted_score: Points,
    pub status: AttemptStatus,
}

impl Attempt {
    pub fn deadline_for(started_at: DateTime<Utc>, duration_minutes: u32) -> DateTime<Utc> {
        started_at + Duration::minutes(i64::from(duration_minutes))
    }

    pub fn is_finalized(&self) -> bool {
        self.submitted_at.is_some()
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match self.status {
            AttemptStatus::Passed => Some(Outcome::Passed),
            AttemptStatus::Failed => Some(Outcome::Failed),
            AttemptStatus::InProgress => None,
        }
    }

    pub fn total(&self) -> u32 {
        self.question_ids.len() as u32
    }

    /// `"13.5 of 15%"`
    pub fn score_display(&self) -> String {
        format!("{} of {}%", self.weighted_score, self.weight)
    }

    pub fn presentation(&self, choice_counts: &[usize]) -> Presentation {
        presentation_order(choice_counts, self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exam() -> Exam {
        Exam {
            exam_id: ExamId::new(),
            course_id: CourseId::new(),
            major_id: None,
            name: "CJPE".into(),
            instructions: String::new(),
            exam_date: NaiveDate::from_ymd_opt(2018, 10, 3).unwrap(),
            reexam_date: None,
            duration_minutes: 60,
            passing_rate: Percent::whole(75),
            weight: Percent::whole(20),
            question_ids: vec![],
            created_at: Utc::now(),
            updated_at: None,
        }
    }

    #[test]
    fn exam_validation() {
        assert!(exam().validate().is_empty());
        assert_eq!(exam().time_limit_display(), "1:00");
        let mut bad = exam();
        bad.duration_minutes = 0;
        bad.name = "  ".into();
        bad.reexam_date = NaiveDate::from_ymd_opt(2018, 10, 2);
        bad.passing_rate = Percent::ZERO;
        let errors = bad.validate();
        for field in ["duration_minutes", "name", "reexam_date", "passing_rate"] {
            assert!(errors.contains_key(field), "{field}");
        }
        assert!(!exam().is_openable());
    }

    #[test]
    fn question_validation() {
        let q = |choices: &[&str], correct| Question {
            question_id: QuestionId::new(),
            exam_id: ExamId::new(),
            stem: "Which?".into(),
            choices: choices.iter().map(|s| s.to_string()).collect(),
            correct_index: correct,
            category: None,
        };
        assert!(q(&["a", "b"], 1).validate().is_empty());
        assert!(q(&["a"], 0).validate().contains_key("choices"));
        assert!(q(&["a", "b", "c", "d", "e", "f"], 0)
            .validate()
            .contains_key("choices"));
        assert!(q(&["a", " "], 0).validate().contains_key("choices"));
        assert!(q(&["a", "b"], 2).validate().contains_key("correct_index"));
    }
}
