//! Exam attempts: eligibility, start, answer saving and finalization.

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use mockboard_core::{
    grade, subject_outcome, weighted_score, AccountId, Attempt, AttemptId, AttemptStatus, Exam,
    ExamId, Points, QuestionId,
};

use crate::eligibility::{eligible_exams, exam_status, matches_profile, ExamStatus};
use crate::model::{AccountStatus, Role};
use crate::state::{Change, State};
use crate::store::Store;
use crate::{Result, StoreError};

/// Owned dashboard row.
#[derive(Debug, Clone, PartialEq)]
pub struct ExamEntry {
    pub exam: Exam,
    pub status: ExamStatus,
    pub in_progress: Option<Attempt>,
}

/// Grades the saved answers and returns the finalized attempt.
fn finalized(state: &State, attempt: &Attempt, at: DateTime<Utc>) -> Result<Attempt> {
    let key: BTreeMap<QuestionId, u8> = attempt
        .question_ids
        .iter()
        .filter_map(|q| {
            state
                .question(*q)
                .map(|question| (*q, question.correct_index))
        })
        .collect();
    let total = attempt.total();
    let raw = grade(&attempt.answers, &key)?;
    let weighted = weighted_score(raw, total, attempt.weight)?.rounded();
    let outcome = subject_outcome(raw, total, attempt.passing_rate)?;
    let mut done = attempt.clone();
    done.raw_score = raw;
    done.weighted_score = weighted;
    done.status = outcome.into();
    done.submitted_at = Some(at.min(attempt.deadline));
    Ok(done)
}

impl Store {
    fn past_grace(&self, attempt: &Attempt, at: DateTime<Utc>) -> bool {
        at > attempt.deadline + self.config().grace
    }

    /// Dashboard rows for a verified examinee.
    pub fn eligible_exams(
        &self,
        examinee: AccountId,
        now: DateTime<Utc>,
    ) -> Result<Vec<ExamEntry>> {
        let today = self.local_date(now);
        self.read(|state| {
            Ok(eligible_exams(state, examinee, today)?
                .into_iter()
                .map(|e| ExamEntry {
                    exam: e.exam.clone(),
                    status: e.status,
                    in_progress: e.in_progress.cloned(),
                })
                .collect())
        })
    }

    /// Starts (or resumes) the examinee's attempt at an exam. The flag is
    /// true when an in-progress attempt was resumed.
    pub fn start_attempt(
        &self,
        examinee: AccountId,
        exam_id: ExamId,
        now: DateTime<Utc>,
        seed: u64,
    ) -> Result<(Attempt, bool)> {
        self.finalize_expired(Some(examinee), now)?;
        let today = self.local_date(now);
        self.commit(|state| {
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
            let exam = state.exam(exam_id).ok_or(StoreError::NotFound("exam"))?;
            if !matches_profile(exam, profile) {
                return Err(StoreError::NotEligible);
            }
            if !exam.is_openable() {
                return Err(StoreError::NotOpen);
            }
            let attempt_no = match exam_status(state, examinee, exam, today) {
                (ExamStatus::Locked, _) => return Err(StoreError::NotOpen),
                (ExamStatus::ViewCertificate, _) => return Err(StoreError::AlreadyTaken),
                (ExamStatus::TakeExam, Some(open)) => return Ok((vec![], (open.clone(), true))),
                (ExamStatus::TakeExam, None) => 1,
                (ExamStatus::Retake, _) => 2,
            };
            let attempt = Attempt {
                attempt_id: AttemptId::new(),
                exam_id,
                examinee_id: examinee,
                attempt_no,
                seed,
                question_ids: exam.question_ids.clone(),
                weight: exam.weight,
                passing_rate: exam.passing_rate,
                started_at: now,
                deadline: Attempt::deadline_for(now, exam.duration_minutes),
                submitted_at: None,
                answers: BTreeMap::new(),
                raw_score: 0,
                weighted_score: Points::ZERO,
                status: AttemptStatus::InProgress,
            };
            Ok((vec![Change::PutAttempt(attempt.clone())], (attempt, false)))
        })
    }

    pub fn attempt(&self, id: AttemptId) -> Option<Attempt> {
        self.read(|s| s.attempt(id).cloned())
    }

    /// Upserts one answer (authored choice index). Past `deadline + grace`
    /// the attempt is finalized instead and `Expired` is returned.
    pub fn record_answer(
        &self,
        attempt_id: AttemptId,
        question_id: QuestionId,
        choice: u8,
        at: DateTime<Utc>,
    ) -> Result<Attempt> {
        let outcome = self.commit(|state| {
            let attempt = state
                .attempt(attempt_id)
                .ok_or(StoreError::NotFound("attempt"))?;
            if attempt.is_finalized() {
                return Err(StoreError::AlreadyFinalized);
            }
            if self.past_grace(attempt, at) {
                return Err(StoreError::Expired);
            }
            if !attempt.question_ids.contains(&question_id) {
                return Err(StoreError::UnknownQuestion);
            }
            let question = state
                .question(question_id)
                .ok_or(StoreError::UnknownQuestion)?;
            if usize::from(choice) >= question.choices.len() {
                return Err(StoreError::InvalidChoice);
            }
            let mut updated = attempt.clone();
            updated.answers.insert(question_id, choice);
            if attempt.answers.get(&question_id) == Some(&choice) {
                return Ok((vec![], updated));
            }
            Ok((
                vec![Change::RecordAnswer {
                    attempt_id,
                    question_id,
                    choice,
                }],
                updated,
            ))
        });
        if let Err(StoreError::Expired) = outcome {
            self.finalize_attempt(attempt_id, at)?;
        }
        outcome
    }

    /// Grades and closes the attempt; `submitted_at = min(at, deadline)`.
    /// Calling it again returns the stored result unchanged.
    pub fn finalize_attempt(&self, attempt_id: AttemptId, at: DateTime<Utc>) -> Result<Attempt> {
        self.commit(|state| {
            let attempt = state
                .attempt(attempt_id)
                .ok_or(StoreError::NotFound("attempt"))?;
            if attempt.is_finalized() {
                return Ok((vec![], attempt.clone()));
            }
            let done = finalized(state, attempt, at)?;
            Ok((vec![Change::PutAttempt(done.clone())], done))
        })
    }

    /// Finalizes in-progress attempts whose grace window has closed, for one
    /// examinee or for everyone.
    pub fn finalize_expired(
        &self,
        examinee: Option<AccountId>,
        now: DateTime<Utc>,
    ) -> Result<Vec<Attempt>> {
        self.commit(|state| {
            let mut changes = Vec::new();
            let mut done = Vec::new();
            for attempt in state.attempts() {
                if attempt.is_finalized()
                    || examinee.is_some_and(|e| e != attempt.examinee_id)
                    || !self.past_grace(attempt, now)
                {
                    continue;
                }
                let graded = finalized(state, attempt, now)?;
                changes.push(Change::PutAttempt(graded.clone()));
                done.push(graded);
            }
            Ok((changes, done))
        })
    }

    pub fn attempts_for_exam(&self, exam: ExamId) -> Vec<Attempt> {
        self.read(|s| {
            s.attempts()
                .filter(|a| a.exam_id == exam)
                .cloned()
                .collect()
        })
    }

    pub fn attempts_for_examinee(&self, examinee: AccountId) -> Vec<Attempt> {
        self.read(|s| {
            s.attempts()
                .filter(|a| a.examinee_id == examinee)
                .cloned()
                .collect()
        })
    }
}
