//! In-memory entity tables and the change log applied to them.

use std::collections::HashMap;

use indexmap::IndexMap;
use mockboard_core::{
    AccountId, AnnouncementId, Attempt, AttemptId, CourseId, Exam, ExamId, Question, QuestionId,
};
use serde::{Deserialize, Serialize};

use crate::model::{Account, Announcement, Course};

/// One durable mutation. Applying a change never fails: every change is
/// validated against the current state before it is journaled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Change {
    PutAccount(Account),
    DeleteAccount(AccountId),
    PutCourse(Course),
    DeleteCourse(CourseId),
    PutExam(Exam),
    DeleteExam(ExamId),
    /// Inserts or replaces questions; new ones are appended to their exam.
    PutQuestions(Vec<Question>),
    DeleteQuestion(QuestionId),
    PutAttempt(Attempt),
    RecordAnswer {
        attempt_id: AttemptId,
        question_id: QuestionId,
        choice: u8,
    },
    PutAnnouncement(Announcement),
    DeleteAnnouncement(AnnouncementId),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct State {
    accounts: IndexMap<AccountId, Account>,
    courses: IndexMap<CourseId, Course>,
    exams: IndexMap<ExamId, Exam>,
    questions: IndexMap<QuestionId, Question>,
    attempts: IndexMap<AttemptId, Attempt>,
    announcements: IndexMap<AnnouncementId, Announcement>,
    #[serde(skip)]
    usernames: HashMap<String, AccountId>,
}

pub(crate) fn username_key(username: &str) -> String {
    username.trim().to_lowercase()
}

impl State {
    pub(crate) fn rebuild_indexes(&mut self) {
        self.usernames = self
            .accounts
            .values()
            .map(|a| (username_key(&a.username), a.account_id))
            .collect();
    }

    pub fn is_empty(&self) -> bool {
        self.accounts.is_empty()
            && self.courses.is_empty()
            && self.exams.is_empty()
            && self.questions.is_empty()
            && self.attempts.is_empty()
            && self.announcements.is_empty()
    }

    pub fn account(&self, id: AccountId) -> Option<&Account> {
        self.accounts.get(&id)
    }

    pub fn account_by_username(&self, username: &str) -> Option<&Account> {
        self.usernames
            .get(&username_key(username))
            .and_then(|id| self.accounts.get(id))
    }

    pub fn accounts(&self) -> impl Iterator<Item = &Account> {
        self.accounts.values()
    }

    pub fn course(&self, id: CourseId) -> Option<&Course> {
        self.courses.get(&id)
    }

    pub fn courses(&self) -> impl Iterator<Item = &Course> {
        self.courses.values()
    }

    pub fn exam(&self, id: ExamId) -> Option<&Exam> {
        self.exams.get(&id)
    }

    /// Exams in authoring order.
    pub fn exams(&self) -> impl Iterator<Item = &Exam> {
        self.exams.values()
    }

    pub fn question(&self, id: QuestionId) -> Option<&Question> {
        self.questions.get(&id)
    }

    /// Questions of an exam in authored order.
    pub fn questions_of(&self, exam: &Exam) -> Vec<&Question> {
        exam.question_ids
            .iter()
            .filter_map(|q| self.questions.get(q))
            .collect()
    }

    pub fn attempt(&self, id: AttemptId) -> Option<&Attempt> {
        self.attempts.get(&id)
    }

    pub fn attempts(&self) -> impl Iterator<Item = &Attempt> {
        self.attempts.values()
    }

    /// Attempts of one examinee at one exam, ordered by attempt number.
    pub fn attempts_for(&self, examinee: AccountId, exam: ExamId) -> Vec<&Attempt> {
        let mut v: Vec<&Attempt> = self
            .attempts
            .values()
            .filter(|a| a.examinee_id == examinee && a.exam_id == exam)
            .collect();
        v.sort_by_key(|a| a.attempt_no);
        v
    }

    /// Latest finalized attempt of an examinee at an exam.
    pub fn latest_finalized(&self, examinee: AccountId, exam: ExamId) -> Option<&Attempt> {
        self.attempts_for(examinee, exam)
            .into_iter()
            .rev()
            .find(|a| a.is_finalized())
    }

    /// Newest first.
    pub fn announcements(&self) -> Vec<&Announcement> {
        let mut v: Vec<&Announcement> = self.announcements.values().collect();
        v.reverse();
        v.sort_by(|a, b| b.created_at.cmp(&a.created_at));
        v
    }

    pub fn announcement(&self, id: AnnouncementId) -> Option<&Announcement> {
        self.announcements.get(&id)
    }

    pub(crate) fn apply(&mut self, change: Change) {
        match change {
            Change::PutAccount(account) => {
                if let Some(old) = self.accounts.get(&account.account_id) {
                    self.usernames.remove(&username_key(&old.username));
                }
                self.usernames
                    .insert(username_key(&account.username), account.account_id);
                self.accounts.insert(account.account_id, account);
            }
            Change::DeleteAccount(id) => {
                if let Some(old) = self.accounts.shift_remove(&id) {
                    self.usernames.remove(&username_key(&old.username));
                }
            }
            Change::PutCourse(course) => {
                self.courses.insert(course.course_id, course);
            }
            Change::DeleteCourse(id) => {
                self.courses.shift_remove(&id);
            }
            Change::PutExam(exam) => {
                self.exams.insert(exam.exam_id, exam);
            }
            Change::DeleteExam(id) => {
                if let Some(exam) = self.exams.shift_remove(&id) {
                    for q in exam.question_ids {
                        self.questions.shift_remove(&q);
                    }
                }
            }
            Change::PutQuestions(questions) => {
                for q in questions {
                    if let Some(exam) = self.exams.get_mut(&q.exam_id) {
                        if !exam.question_ids.contains(&q.question_id) {
                            exam.question_ids.push(q.question_id);
                        }
                    }
                    self.questions.insert(q.question_id, q);
                }
            }
            Change::DeleteQuestion(id) => {
                if let Some(q) = self.questions.shift_remove(&id) {
                    if let Some(exam) = self.exams.get_mut(&q.exam_id) {
                        exam.question_ids.retain(|x| *x != id);
                    }
                }
            }
            Change::PutAttempt(attempt) => {
                self.attempts.insert(attempt.attempt_id, attempt);
            }
            Change::RecordAnswer {
                attempt_id,
                question_id,
                choice,
            } => {
                if let Some(a) = self.attempts.get_mut(&attempt_id) {
                    a.answers.insert(question_id, choice);
                }
            }
            Change::PutAnnouncement(a) => {
                self.announcements.insert(a.announcement_id, a);
            }
            Change::DeleteAnnouncement(id) => {
                self.announcements.shift_remove(&id);
            }
        }
    }
}
