#![allow(dead_code)]

use chrono::{DateTime, NaiveDate, TimeZone, Utc};
use mockboard_core::{AccountId, CourseId, Exam, Percent};
use mockboard_store::{
    Account, AccountStatus, ExamDraft, ExamineeProfile, PasswordDigest, QuestionDraft, Role, Store,
    StoreConfig,
};

pub fn at(y: i32, mo: u32, d: u32, h: u32, mi: u32, s: u32) -> DateTime<Utc> {
    Utc.with_ymd_and_hms(y, mo, d, h, mi, s).unwrap()
}

pub fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

pub fn open(dir: &std::path::Path) -> Store {
    Store::open(dir, StoreConfig::default()).unwrap()
}

pub fn digest() -> PasswordDigest {
    PasswordDigest::with_rounds("secret", 1)
}

pub fn examinee(course: CourseId, username: &str, student_number: &str) -> Account {
    Account {
        account_id: AccountId::new(),
        username: username.into(),
        password: digest(),
        role: Role::Examinee,
        status: AccountStatus::Pending,
        scope_course_id: None,
        profile: Some(ExamineeProfile {
            student_number: student_number.into(),
            last_name: "Dela Cruz".into(),
            first_name: "Juan".into(),
            middle_name: "Santos".into(),
            address: "Tacloban City".into(),
            contact_number: "09171234567".into(),
            birthdate: date(1997, 5, 4),
            course_id: course,
            major_id: None,
            terms_accepted: true,
        }),
        created_at: at(2018, 11, 1, 8, 0, 0),
        updated_at: None,
    }
}

pub fn admin(username: &str, scope: Option<CourseId>) -> Account {
    Account {
        account_id: AccountId::new(),
        username: username.into(),
        password: digest(),
        role: Role::Admin,
        status: AccountStatus::Verified,
        scope_course_id: scope,
        profile: None,
        created_at: at(2018, 11, 1, 8, 0, 0),
        updated_at: None,
    }
}

pub fn draft(course: CourseId, name: &str, weight: u32) -> ExamDraft {
    ExamDraft {
        course_id: course,
        major_id: None,
        name: name.into(),
        instructions: "Choose the best answer.".into(),
        exam_date: date(2018, 11, 21),
        reexam_date: None,
        duration_minutes: 60,
        passing_rate: Percent::whole(75),
        weight: Some(Percent::whole(weight)),
    }
}

/// Ten four-choice questions whose correct choice is `i % 4`.
pub fn ten_questions() -> Vec<QuestionDraft> {
    (0..10)
        .map(|i| QuestionDraft {
            stem: format!("Question {}", i + 1),
            choices: vec!["A".into(), "B".into(), "C".into(), "D".into()],
            correct_index: (i % 4) as u8,
            category: None,
        })
        .collect()
}

pub struct Fixture {
    pub course: CourseId,
    pub exam: Exam,
    pub examinee: AccountId,
}

/// A BSCrim course with one 10-question exam and a verified examinee.
pub fn fixture(store: &Store) -> Fixture {
    let now = at(2018, 11, 1, 8, 0, 0);
    let course = store
        .create_course("Bachelor of Science in Criminology", &[], "admin", now)
        .unwrap();
    let (exam, _) = store
        .create_exam(&draft(course.course_id, "Criminal Jurisprudence", 20), now)
        .unwrap();
    store.add_questions(exam.exam_id, &ten_questions()).unwrap();
    let exam = store.exam(exam.exam_id).unwrap();
    let student = store
        .create_account(examinee(course.course_id, "juan", "2018-0001"))
        .unwrap();
    store
        .set_account_status(student.account_id, AccountStatus::Verified, now)
        .unwrap();
    Fixture {
        course: course.course_id,
        exam,
        examinee: student.account_id,
    }
}

/// Answers the first `correct` questions right and the rest wrong.
pub fn answer(
    store: &Store,
    attempt: &mockboard_core::Attempt,
    correct: usize,
    when: DateTime<Utc>,
) {
    for (i, q) in attempt.question_ids.iter().enumerate() {
        let key = store.question(*q).unwrap().correct_index;
        let choice = if i < correct { key } else { (key + 1) % 4 };
        store
            .record_answer(attempt.attempt_id, *q, choice, when)
            .unwrap();
    }
}
