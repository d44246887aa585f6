//! CSV export of entity tables for backup.

use std::io::Write;

use serde::Serialize;

use crate::state::State;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Accounts,
    Courses,
    Exams,
    Questions,
    Attempts,
    Announcements,
}

impl std::str::FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "accounts" => Table::Accounts,
            "courses" => Table::Courses,
            "exams" => Table::Exams,
            "questions" => Table::Questions,
            "attempts" => Table::Attempts,
            "announcements" => Table::Announcements,
            other => return Err(format!("unknown table {other:?}")),
        })
    }
}

#[derive(Serialize)]
struct AccountRow<'a> {
    account_id: String,
    username: &'a str,
    role: String,
    status: String,
    scope_course_id: String,
    student_number: &'a str,
    last_name: &'a str,
    first_name: &'a str,
    middle_name: &'a str,
    course_id: String,
    major_id: String,
    created_at: String,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes one table as CSV (CRLF line endings). Password digests are never
/// exported.
pub fn write_table(state: &State, table: Table, out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    match table {
        Table::Accounts => {
            for a in state.accounts() {
                let p = a.profile.as_ref();
                w.serialize(AccountRow {
                    account_id: a.account_id.to_string(),
                    username: &a.username,
                    role: format!("{:?}", a.role),
                    status: format!("{:?}", a.status),
                    scope_course_id: opt(a.scope_course_id),
                    student_number: p.map_or("", |p| &p.student_number),
                    last_name: p.map_or("", |p| &p.last_name),
                    first_name: p.map_or("", |p| &p.first_name),
                    middle_name: p.map_or("", |p| &p.middle_name),
                    course_id: opt(p.map(|p| p.course_id)),
                    major_id: opt(p.and_then(|p| p.major_id)),
                    created_at: a.created_at.to_rfc3339(),
                })
                .map_err(std::io::Error::other)?;
            }
        }
        Table::Courses => {
            w.write_record([
                "course_id",
                "name",
                "majors",
                "created_by",
                "created_at",
                "updated_at",
            ])
            .map_err(std::io::Error::other)?;
            for c in state.courses() {
                let majors: Vec<&str> = c.majors.iter().map(|m| m.name.as_str()).collect();
                w.write_record([
                    c.course_id.to_string(),
                    c.name.clone(),
                    majors.join("; "),
                    c.created_by.clone(),
                    c.created_at.to_rfc3339(),
                    opt(c.updated_at.map(|t| t.to_rfc3339())),
                ])
                .map_err(std::io::Error::other)?;
            }
        }
        Table::Exams => {
            w.write_record([
                "exam_id",
                "course_id",
                "major_id",
                "name",
                "exam_date",
                "reexam_date",
                "duration_minutes",
                "passing_rate",
                "weight",
                "questions",
            ])
            .map_err(std::io::Error::other)?;
            for e in state.exams() {
                w.write_record([
                    e.exam_id.to_string(),
                    e.course_id.to_string(),
                    opt(e.major_id),
                    e.name.clone(),
                    e.exam_date.to_string(),
                    opt(e.reexam_date),
                    e.duration_minutes.to_string(),
                    e.passing_rate.to_string(),
                    e.weight.to_string(),
                    e.question_ids.len().to_string(),
                ])
                .map_err(std::io::Error::other)?;
            }
        }
        Table::Questions => {
            w.write_record([
                "question_id",
                "exam_id",
                "stem",
                "choices",
                "correct_index",
                "category",
            ])
            .map_err(std::io::Error::other)?;
            for e in state.exams() {
                for q in state.questions_of(e) {
                    w.write_record([
                        q.question_id.to_string(),
                        q.exam_id.to_string(),
                        q.stem.clone(),
                        q.choices.join(" | "),
                        q.correct_index.to_string(),
                        q.category.clone().unwrap_or_default(),
                    ])
                    .map_err(std::io::Error::other)?;
                }
            }
        }
        Table::Attempts => {
            w.write_record([
                "attempt_id",
                "exam_id",
                "examinee_id",
                "attempt_no",
                "started_at",
                "deadline",
                "submitted_at",
                "answered",
                "raw_score",
                "weighted_score",
                "status",
            ])
            .map_err(std::io::Error::other)?;
            for a in state.attempts() {
                w.write_record([
                    a.attempt_id.to_string(),
                    a.exam_id.to_string(),
                    a.examinee_id.to_string(),
                    a.attempt_no.to_string(),
                    a.started_at.to_rfc3339(),
                    a.deadline.to_rfc3339(),
                    opt(a.submitted_at.map(|t| t.to_rfc3339())),
                    a.answers.len().to_string(),
                    a.raw_score.to_string(),
                    a.weighted_score.to_string(),
                    format!("{:?}", a.status),
                ])
                .map_err(std::io::Error::other)?;
            }
        }
        Table::Announcements => {
            w.write_record(["announcement_id", "body", "author", "created_at"])
                .map_err(std::io::Error::other)?;
            for a in state.announcements() {
                w.write_record([
                    a.announcement_id.to_string(),
                    a.body.clone(),
                    a.author.clone(),
                    a.created_at.to_rfc3339(),
                ])
                .map_err(std::io::Error::other)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
