use chrono::{DateTime, Utc};
use mockboard_api::{Certificate, CertificateRow};
use mockboard_core::{
    overall_rating, AccountId, Outcome, OverallRating, Percent, Points, ScorePart,
};
use mockboard_store::{AccountStatus, Role, State};

use crate::ReportError;

/// One row per exam with a finalized attempt (the latest one), in exam
/// authoring order. The rating covers only those rows.
pub fn build_certificate(
    state: &State,
    examinee: AccountId,
    threshold: Percent,
    issued_at: DateTime<Utc>,
) -> Result<Certificate, ReportError> {
    let account = state
        .account(examinee)
        .ok_or(ReportError::UnknownExaminee)?;
    if account.role != Role::Examinee {
        return Err(ReportError::UnknownExaminee);
    }
    if account.status != AccountStatus::Verified {
        return Err(ReportError::NotVerified);
    }
    let profile = account
        .profile
        .as_ref()
        .ok_or(ReportError::UnknownExaminee)?;
    let course = state.course(profile.course_id);

    let mut rows = Vec::new();
    let mut parts = Vec::new();
    for exam in state.exams() {
        let Some(attempt) = state.latest_finalized(examinee, exam.exam_id) else {
            continue;
        };
        let (Some(outcome), Some(submitted_at)) = (attempt.outcome(), attempt.submitted_at) else {
            continue;
        };
        parts.push(ScorePart {
            raw: attempt.raw_score,
            total: attempt.total(),
            weight: attempt.weight,
            passing_rate: attempt.passing_rate,
        });
        rows.push(CertificateRow {
            exam_id: exam.exam_id,
            exam_name: exam.name.clone(),
            attempt_no: attempt.attempt_no,
            submitted_at,
            raw_score: attempt.raw_score,
            total_questions: attempt.total(),
            weighted_score: attempt.weighted_score,
            weight: attempt.weight,
            score: attempt.score_display(),
            outcome,
        });
    }
    let OverallRating { rating, outcome } = if parts.is_empty() {
        OverallRating {
            rating: Points::ZERO,
            outcome: Outcome::Failed,
        }
    } else {
        overall_rating(&parts, threshold)?
    };

    Ok(Certificate {
        examinee_id: examinee,
        examinee_name: profile.display_name(),
        student_number: profile.student_number.clone(),
        course: course.map(|c| c.name.clone()).unwrap_or_default(),
        major: course
            .zip(profile.major_id)
            .and_then(|(c, m)| c.majors.iter().find(|x| x.major_id == m))
            .map(|m| m.name.clone()),
        rows,
        rating,
        outcome,
        threshold,
        issued_at,
    })
}
