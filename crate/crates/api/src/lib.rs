//! Request and response bodies of the `/mockboard/api` HTTP interface.
//!
//! Choice indices on the wire are always *authored* indices. Presented
//! questions carry the display permutation explicitly so clients never need
//! to know the shuffle.

use std::collections::BTreeMap;

use chrono::{DateTime, NaiveDate, Utc};
use mockboard_core::{
    AccountId, AnnouncementId, AttemptId, CourseId, ExamId, MajorId, Outcome, Percent, Points,
    QuestionId,
};
use serde::{Deserialize, Serialize};

pub use mockboard_core::{Exam, Question};

mod reports;

pub use reports::*;

pub const API_PREFIX: &str = "/mockboard/api";

/// Machine-readable failure codes carried in [`ErrorBody::code`].
pub mod codes {
    pub const BAD_REQUEST: &str = "BAD_REQUEST";
    pub const VALIDATION_FAILED: &str = "VALIDATION_FAILED";
    pub const UNAUTHENTICATED: &str = "UNAUTHENTICATED";
    pub const BAD_CREDENTIALS: &str = "BAD_CREDENTIALS";
    pub const AWAITING_VERIFICATION: &str = "AWAITING_VERIFICATION";
    pub const ACCOUNT_DISABLED: &str = "ACCOUNT_DISABLED";
    pub const FORBIDDEN: &str = "FORBIDDEN";
    pub const NOT_ELIGIBLE: &str = "NOT_ELIGIBLE";
    pub const NOT_FOUND: &str = "NOT_FOUND";
    pub const UNKNOWN_ACCOUNT: &str = "UNKNOWN_ACCOUNT";
    pub const UNKNOWN_EXAM: &str = "UNKNOWN_EXAM";
    pub const UNKNOWN_ATTEMPT: &str = "UNKNOWN_ATTEMPT";
    pub const UNKNOWN_QUESTION: &str = "UNKNOWN_QUESTION";
    pub const UNKNOWN_EXAMINEE: &str = "UNKNOWN_EXAMINEE";
    pub const DUPLICATE_KEY: &str = "DUPLICATE_KEY";
    pub const FOREIGN_KEY_MISSING: &str = "FOREIGN_KEY_MISSING";
    pub const DELETE_RESTRICTED: &str = "DELETE_RESTRICTED";
    pub const CONFLICT: &str = "CONFLICT";
    pub const NOT_VERIFIED: &str = "NOT_VERIFIED";
    pub const NOT_OPEN: &str = "NOT_OPEN";
    pub const ALREADY_TAKEN: &str = "ALREADY_TAKEN";
    pub const EXPIRED: &str = "EXPIRED";
    pub const ALREADY_FINALIZED: &str = "ALREADY_FINALIZED";
    pub const NOT_FINALIZED: &str = "NOT_FINALIZED";
    pub const WEIGHT_OVERFLOW: &str = "WEIGHT_OVERFLOW";
    pub const INTERNAL: &str = "INTERNAL";
}

/// Uniform failure envelope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Admin,
    Examinee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AccountStatus {
    Pending,
    Verified,
    Disabled,
}

/// Dashboard status column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExamStatus {
    Locked,
    TakeExam,
    Retake,
    ViewCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterRequest {
    pub username: String,
    pub password: String,
    pub student_number: String,
    pub last_name: String,
    pub first_name: String,
    #[serde(default)]
    pub middle_name: String,
    pub address: String,
    pub contact_number: String,
    pub birthdate: NaiveDate,
    pub course_id: CourseId,
    #[serde(default)]
    pub major_id: Option<MajorId>,
    #[serde(default)]
    pub terms_accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileView {
    pub student_number: String,
    pub last_name: String,
    pub first_name: String,
    pub middle_name: String,
    pub address: String,
    pub contact_number: String,
    pub birthdate: NaiveDate,
    pub course_id: CourseId,
    pub course_name: String,
    pub major_id: Option<MajorId>,
    pub major_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountView {
    pub account_id: AccountId,
    pub username: String,
    pub role: Role,
    pub status: AccountStatus,
    pub scope_course_id: Option<CourseId>,
    pub profile: Option<ProfileView>,
    pub created_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoginRequest {
    pub username: String,
    pub password: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoginResponse {
    pub token: String,
    pub account_id: AccountId,
    pub role: Role,
    pub expires_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnouncementView {
    pub announcement_id: AnnouncementId,
    pub body: String,
    pub author: String,
    pub created_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnouncementRequest {
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DashboardRow {
    pub exam_id: ExamId,
    pub name: String,
    /// `H:MM`
    pub time_limit: String,
    pub duration_minutes: u32,
    pub passing_rate: Percent,
    pub exam_date: NaiveDate,
    pub total_questions: u32,
    pub status: ExamStatus,
    /// In-progress attempt to resume, if any.
    pub attempt_id: Option<AttemptId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DashboardResponse {
    pub account: AccountView,
    pub exams: Vec<DashboardRow>,
    pub announcements: Vec<AnnouncementView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartAttemptRequest {
    pub exam_id: ExamId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedQuestion {
    pub question_id: QuestionId,
    /// 1-based display position.
    pub number: u32,
    pub stem: String,
    /// Choice texts in display order.
    pub choices: Vec<String>,
    /// `choice_order[d]` is the authored index of display choice `d`.
    pub choice_order: Vec<u8>,
    /// Saved answer, as an authored index.
    pub selected: Option<u8>,
    pub category: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttemptView {
    pub attempt_id: AttemptId,
    pub exam_id: ExamId,
    pub exam_name: String,
    pub instructions: String,
    pub attempt_no: u8,
    pub started_at: DateTime<Utc>,
    pub deadline: DateTime<Utc>,
    pub remaining_seconds: u64,
    pub questions: Vec<PresentedQuestion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerRequest {
    /// Authored choice index.
    pub choice: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerAck {
    pub question_id: QuestionId,
    pub choice: u8,
    pub answered: u32,
    pub remaining_seconds: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultView {
    pub attempt_id: AttemptId,
    pub exam_id: ExamId,
    pub exam_name: String,
    pub attempt_no: u8,
    pub raw_score: u32,
    pub total_questions: u32,
    pub answered: u32,
    pub weighted_score: Points,
    pub weight: Percent,
    /// `"13.5 of 15%"`
    pub score: String,
    pub outcome: Outcome,
    pub started_at: DateTime<Utc>,
    pub submitted_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorRequest {
    #[serde(default)]
    pub major_id: Option<MajorId>,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CourseRequest {
    pub name: String,
    #[serde(default)]
    pub majors: Vec<MajorRequest>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorView {
    pub major_id: MajorId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CourseView {
    pub course_id: CourseId,
    pub name: String,
    pub majors: Vec<MajorView>,
    pub created_by: String,
    pub created_at: DateTime<Utc>,
    pub updated_at: Option<DateTime<Utc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExamRequest {
    pub course_id: CourseId,
    #[serde(default)]
    pub major_id: Option<MajorId>,
    pub name: String,
    #[serde(default)]
    pub instructions: String,
    pub exam_date: NaiveDate,
    #[serde(default)]
    pub reexam_date: Option<NaiveDate>,
    pub duration_minutes: u32,
    pub passing_rate: Percent,
    #[serde(default)]
    pub weight: Option<Percent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExamResponse {
    pub exam: Exam,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionRequest {
    pub stem: String,
    pub choices: Vec<String>,
    pub correct_index: u8,
    #[serde(default)]
    pub category: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionBatch {
    pub questions: Vec<QuestionRequest>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}
