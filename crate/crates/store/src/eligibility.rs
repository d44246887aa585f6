//! Which exams an examinee sees on the dashboard, and in what state.

use chrono::NaiveDate;
use mockboard_core::{AccountId, Attempt, AttemptStatus, Exam};
use serde::{Deserialize, Serialize};

use crate::model::{AccountStatus, ExamineeProfile, Role};
use crate::state::State;
use crate::{Result, StoreError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExamStatus {
    Locked,
    TakeExam,
    Retake,
    ViewCertificate,
}

#[derive(Debug, Clone, Copy)]
pub struct EligibleExam<'a> {
    pub exam: &'a Exam,
    pub status: ExamStatus,
    /// In-progress attempt when `TakeExam` resumes one.
    pub in_progress: Option<&'a Attempt>,
}

pub(crate) fn matches_profile(exam: &Exam, profile: &ExamineeProfile) -> bool {
    if exam.course_id != profile.course_id {
        return false;
    }
    match (exam.major_id, profile.major_id) {
        (Some(e), Some(p)) => e == p,
        _ => true,
    }
}

/// Status of one exam for one examinee on `today`.
///
/// | attempts                         | status                          |
/// |----------------------------------|---------------------------------|
/// | none, before exam date           | Locked                          |
/// | none, on/after exam date         | TakeExam                        |
/// | any in progress                  | TakeExam (resume)               |
/// | #1 failed, re-exam date reached  | Retake                          |
/// | otherwise finalized              | ViewCertificate                 |
pub fn exam_status<'a>(
    state: &'a State,
    examinee: AccountId,
    exam: &Exam,
    today: NaiveDate,
) -> (ExamStatus, Option<&'a Attempt>) {
    let attempts = state.attempts_for(examinee, exam.exam_id);
    if let Some(open) = attempts.iter().find(|a| !a.is_finalized()) {
        return (ExamStatus::TakeExam, Some(open));
    }
    let status = match attempts.as_slice() {
        [] if today < exam.exam_date => ExamStatus::Locked,
        [] => ExamStatus::TakeExam,
        [first]
            if first.status == AttemptStatus::Failed
                && exam.reexam_date.is_some_and(|d| today >= d) =>
        {
            ExamStatus::Retake
        }
        _ => ExamStatus::ViewCertificate,
    };
    (status, None)
}

/// Exams of the examinee's course (and major, when both sides name one)
/// that have at least one question, in authoring order.
pub fn eligible_exams(
    state: &State,
    examinee: AccountId,
    today: NaiveDate,
) -> Result<Vec<EligibleExam<'_>>> {
    let account = state
        .account(examinee)
        .ok_or(StoreError::NotFound("account"))?;
    if account.role != Role::Examinee {
        return Err(StoreError::NotEligible);
    }
    if account.status != AccountStatus::Verified {
        return Err(StoreError::NotVerified);
    }
    let profile = account.profile.as_ref().ok_or(StoreError::NotEligible)?;
    Ok(state
        .exams()
        .filter(|e| e.is_openable() && matches_profile(e, profile))
        .map(|exam| {
            let (status, in_progress) = exam_status(state, examinee, exam, today);
            EligibleExam {
                exam,
                status,
                in_progress,
            }
        })
        .collect())
}
