//! Conversions from store entities to wire types.

use chrono::{DateTime, Utc};
use mockboard_api as api;
use mockboard_core::{Attempt, Exam};
use mockboard_store::{
    Account, AccountStatus, Announcement, Course, ExamEntry, ExamStatus, Role, State,
};

pub fn role(role: Role) -> api::Role {
    match role {
        Role::Admin => api::Role::Admin,
        Role::Examinee => api::Role::Examinee,
    }
}

pub fn status(status: AccountStatus) -> api::AccountStatus {
    match status {
        AccountStatus::Pending => api::AccountStatus::Pending,
        AccountStatus::Verified => api::AccountStatus::Verified,
        AccountStatus::Disabled => api::AccountStatus::Disabled,
    }
}

pub fn exam_status(status: ExamStatus) -> api::ExamStatus {
    match status {
        ExamStatus::Locked => api::ExamStatus::Locked,
        ExamStatus::TakeExam => api::ExamStatus::TakeExam,
        ExamStatus::Retake => api::ExamStatus::Retake,
        ExamStatus::ViewCertificate => api::ExamStatus::ViewCertificate,
    }
}

pub fn account(state: &State, account: &Account) -> api::AccountView {
    let profile = account.profile.as_ref().map(|p| {
        let course = state.course(p.course_id);
        let major_name = p.major_id.and_then(|m| {
            course?
                .majors
                .iter()
                .find(|x| x.major_id == m)
                .map(|x| x.name.clone())
        });
        api::ProfileView {
            student_number: p.student_number.clone(),
            last_name: p.last_name.clone(),
            first_name: p.first_name.clone(),
            middle_name: p.middle_name.clone(),
            address: p.address.clone(),
            contact_number: p.contact_number.clone(),
            birthdate: p.birthdate,
            course_id: p.course_id,
            course_name: course.map(|c| c.name.clone()).unwrap_or_default(),
            major_id: p.major_id,
            major_name,
        }
    });
    api::AccountView {
        account_id: account.account_id,
        username: account.username.clone(),
        role: role(account.role),
        status: status(account.status),
        scope_course_id: account.scope_course_id,
        profile,
        created_at: account.created_at,
    }
}

pub fn course(course: Course) -> api::CourseView {
    api::CourseView {
        course_id: course.course_id,
        name: course.name,
        majors: course
            .majors
            .into_iter()
            .map(|m| api::MajorView {
                major_id: m.major_id,
                name: m.name,
            })
            .collect(),
        created_by: course.created_by,
        created_at: course.created_at,
        updated_at: course.updated_at,
    }
}

pub fn announcement(a: Announcement) -> api::AnnouncementView {
    api::AnnouncementView {
        announcement_id: a.announcement_id,
        body: a.body,
        author: a.author,
        created_at: a.created_at,
    }
}

pub fn dashboard_row(entry: ExamEntry) -> api::DashboardRow {
    api::DashboardRow {
        exam_id: entry.exam.exam_id,
        time_limit: entry.exam.time_limit_display(),
        duration_minutes: entry.exam.duration_minutes,
        passing_rate: entry.exam.passing_rate,
        exam_date: entry.exam.exam_date,
        total_questions: entry.exam.question_ids.len() as u32,
        status: exam_status(entry.status),
        attempt_id: entry.in_progress.map(|a| a.attempt_id),
        name: entry.exam.name,
    }
}

pub fn remaining(attempt: &Attempt, now: DateTime<Utc>) -> u64 {
    (attempt.deadline - now).num_seconds().max(0) as u64
}

/// The examinee's view of an attempt: shuffled order, no answer key.
pub fn attempt(
    state: &State,
    exam: &Exam,
    attempt: &Attempt,
    now: DateTime<Utc>,
) -> api::AttemptView {
    let questions: Vec<_> = attempt
        .question_ids
        .iter()
        .map(|q| state.question(*q))
        .collect();
    let counts: Vec<usize> = questions
        .iter()
        .map(|q| q.map_or(0, |q| q.choices.len()))
        .collect();
    let layout = attempt.presentation(&counts);
    let presented = layout
        .question_order
        .iter()
        .enumerate()
        .filter_map(|(display, &authored)| {
            let question = questions[authored]?;
            let order = &layout.choice_orders[authored];
            Some(api::PresentedQuestion {
                question_id: question.question_id,
                number: display as u32 + 1,
                stem: question.stem.clone(),
                choices: order.iter().map(|&c| question.choices[c].clone()).collect(),
                choice_order: order.iter().map(|&c| c as u8).collect(),
                selected: attempt.answers.get(&question.question_id).copied(),
                category: question.category.clone(),
            })
        })
        .collect();
    api::AttemptView {
        attempt_id: attempt.attempt_id,
        exam_id: attempt.exam_id,
        exam_name: exam.name.clone(),
        instructions: exam.instructions.clone(),
        attempt_no: attempt.attempt_no,
        started_at: attempt.started_at,
        deadline: attempt.deadline,
        remaining_seconds: remaining(attempt, now),
        questions: presented,
    }
}

/// `None` while the attempt is still open.
pub fn result(exam_name: &str, attempt: &Attempt) -> Option<api::ResultView> {
    Some(api::ResultView {
        attempt_id: attempt.attempt_id,
        exam_id: attempt.exam_id,
        exam_name: exam_name.to_string(),
        attempt_no: attempt.attempt_no,
        raw_score: attempt.raw_score,
        total_questions: attempt.total(),
        answered: attempt.answers.len() as u32,
        weighted_score: attempt.weighted_score,
        weight: attempt.weight,
        score: attempt.score_display(),
        outcome: attempt.outcome()?,
        started_at: attempt.started_at,
        submitted_at: attempt.submitted_at?,
    })
}
