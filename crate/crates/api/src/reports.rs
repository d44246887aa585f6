use chrono::{DateTime, Utc};
use mockboard_core::{AccountId, ExamId, Outcome, Percent, Points, QuestionId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub exam_id: ExamId,
    pub exam_name: String,
    pub attempt_no: u8,
    pub submitted_at: DateTime<Utc>,
    pub raw_score: u32,
    pub total_questions: u32,
    pub weighted_score: Points,
    pub weight: Percent,
    /// `"13.5 of 15%"`
    pub score: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub examinee_id: AccountId,
    pub examinee_name: String,
    pub student_number: String,
    pub course: String,
    pub major: Option<String>,
    pub rows: Vec<CertificateRow>,
    pub rating: Points,
    pub outcome: Outcome,
    pub threshold: Percent,
    pub issued_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeRow {
    pub examinee: String,
    pub student_number: String,
    pub attempt_no: u8,
    pub raw_score: u32,
    pub total_questions: u32,
    pub weighted_score: Points,
    pub weight: Percent,
    pub outcome: Outcome,
    pub started_at: DateTime<Utc>,
    pub submitted_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeReport {
    pub exam_id: ExamId,
    pub exam_name: String,
    pub rows: Vec<GradeRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemRow {
    pub question_id: QuestionId,
    pub position: usize,
    pub stem_excerpt: String,
    pub category: Option<String>,
    pub correct_index: u8,
    pub n_responses: u32,
    /// Absent without responses.
    pub difficulty: Option<f64>,
    /// Absent with fewer than two examinees.
    pub discrimination: Option<f64>,
    pub choice_distribution: Vec<u32>,
    pub flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemAnalysisReport {
    pub exam_id: ExamId,
    pub exam_name: String,
    pub examinees: usize,
    pub items: Vec<ItemRow>,
}
