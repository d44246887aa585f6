//! Demo dataset: one criminology course, five subject exams dated
//! 2018-11-21, and an examinee with three graded attempts.

use chrono::{DateTime, NaiveDate, Utc};
use mockboard_core::{AccountId, CourseId, Exam, ExamId, Percent};
use mockboard_store::{
    Account, AccountStatus, ExamDraft, ExamineeProfile, PasswordDigest, QuestionDraft, Role, Store,
    StoreError,
};

use crate::OpsError;

pub const DEMO_COURSE: &str = "BSCrim - Bachelor of Science in Criminology";
pub const DEMO_USERNAME: &str = "juan.delacruz";
pub const DEMO_STUDENT_NUMBER: &str = "2018-0001";

/// Subject name, weight.
pub const DEMO_EXAMS: [(&str, u32); 5] = [
    (
        "Criminal Jurisprudence, Procedure And Evidence for BSCRIM",
        20,
    ),
    ("Law Enforcement Administration for BSCRIM", 20),
    ("Crime Detection and Investigation for BSCRIM", 15),
    ("Sociology of Crimes and Ethics for BSCRIM", 15),
    ("Correctional Administration for BSCRIM", 30),
];

/// Correct answers out of ten and submission instant for the first three
/// exams.
pub const DEMO_ATTEMPTS: [(usize, &str); 3] = [
    (0, "2018-11-23T16:11:13Z"),
    (3, "2018-11-25T14:11:01Z"),
    (9, "2018-11-25T21:11:30Z"),
];

const QUESTIONS_PER_EXAM: usize = 10;

#[derive(Debug, Clone)]
pub struct DemoSummary {
    pub course_id: CourseId,
    pub exam_ids: Vec<ExamId>,
    pub examinee_id: AccountId,
}

fn instant(s: &str) -> DateTime<Utc> {
    DateTime::parse_from_rfc3339(s)
        .expect("valid demo timestamp")
        .to_utc()
}

fn questions(subject: &str) -> Vec<QuestionDraft> {
    (0..QUESTIONS_PER_EXAM)
        .map(|i| QuestionDraft {
            stem: format!("{subject}: practice item {}", i + 1),
            choices: [
                "First option",
                "Second option",
                "Third option",
                "Fourth option",
            ]
            .map(String::from)
            .to_vec(),
            correct_index: (i % 4) as u8,
            category: Some("practice".into()),
        })
        .collect()
}

fn take(
    store: &Store,
    examinee: AccountId,
    exam: &Exam,
    correct: usize,
    submitted: DateTime<Utc>,
) -> Result<(), OpsError> {
    let started = submitted - chrono::Duration::minutes(20);
    let (attempt, _) =
        store.start_attempt(examinee, exam.exam_id, started, 0x5EED ^ correct as u64)?;
    for (i, qid) in exam.question_ids.iter().enumerate() {
        let key = store
            .question(*qid)
            .ok_or(StoreError::NotFound("question"))?
            .correct_index;
        let choice = if i < correct { key } else { (key + 1) % 4 };
        store.record_answer(
            attempt.attempt_id,
            *qid,
            choice,
            started + chrono::Duration::minutes(1),
        )?;
    }
    store.finalize_attempt(attempt.attempt_id, submitted)?;
    Ok(())
}

/// Seeds an empty store. Refuses to touch a store that holds anything.
pub fn seed_demo(store: &Store, examinee_password: &str) -> Result<DemoSummary, OpsError> {
    if !store.read(|s| s.is_empty()) {
        return Err(StoreError::NonEmptyStore.into());
    }
    let created = instant("2018-11-20T09:00:00Z");
    let course = store.create_course(DEMO_COURSE, &[], "admin", created)?;
    let mut exams = Vec::new();
    for (name, weight) in DEMO_EXAMS {
        let draft = ExamDraft {
            course_id: course.course_id,
            major_id: None,
            name: name.into(),
            instructions: "Read each question carefully and choose the best answer.".into(),
            exam_date: NaiveDate::from_ymd_opt(2018, 11, 21).expect("valid date"),
            reexam_date: None,
            duration_minutes: 60,
            passing_rate: Percent::whole(75),
            weight: Some(Percent::whole(weight)),
        };
        let (exam, _) = store.create_exam(&draft, created)?;
        store.add_questions(
            exam.exam_id,
            &questions(name.trim_end_matches(" for BSCRIM")),
        )?;
        exams.push(store.exam(exam.exam_id).expect("just created"));
    }
    let examinee = store.create_account(Account {
        account_id: AccountId::new(),
        username: DEMO_USERNAME.into(),
        password: PasswordDigest::new(examinee_password),
        role: Role::Examinee,
        status: AccountStatus::Verified,
        scope_course_id: None,
        profile: Some(ExamineeProfile {
            student_number: DEMO_STUDENT_NUMBER.into(),
            last_name: "Dela Cruz".into(),
            first_name: "Juan".into(),
            middle_name: String::new(),
            address: "Quezon City".into(),
            contact_number: "09170000000".into(),
            birthdate: NaiveDate::from_ymd_opt(1997, 6, 12).expect("valid date"),
            course_id: course.course_id,
            major_id: None,
            terms_accepted: true,
        }),
        created_at: created,
        updated_at: None,
    })?;
    for (exam, (correct, submitted)) in exams.iter().zip(DEMO_ATTEMPTS) {
        take(
            store,
            examinee.account_id,
            exam,
            correct,
            instant(submitted),
        )?;
    }
    store.post_announcement(
        "NOTICE: Have a nice day!",
        "admin",
        instant("2018-11-23T16:32:00Z"),
    )?;
    Ok(DemoSummary {
        course_id: course.course_id,
        exam_ids: exams.iter().map(|e| e.exam_id).collect(),
        examinee_id: examinee.account_id,
    })
}
