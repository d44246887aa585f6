use chrono::{DateTime, SecondsFormat, Utc};
use mockboard_api::{GradeReport, GradeRow};
use mockboard_core::{ExamId, Outcome, Points};
use mockboard_store::State;

use crate::ReportError;

pub const GRADE_CSV_HEADER: [&str; 10] = [
    "examinee",
    "student_number",
    "attempt_no",
    "raw_score",
    "total_questions",
    "weighted_score",
    "weight",
    "outcome",
    "started_at",
    "submitted_at",
];

/// One row per finalized attempt, in start order.
pub fn grade_report(state: &State, exam_id: ExamId) -> Result<GradeReport, ReportError> {
    let exam = state.exam(exam_id).ok_or(ReportError::UnknownExam)?;
    let mut rows = Vec::new();
    for attempt in state.attempts().filter(|a| a.exam_id == exam_id) {
        let (Some(outcome), Some(submitted_at)) = (attempt.outcome(), attempt.submitted_at) else {
            continue;
        };
        let profile = state
            .account(attempt.examinee_id)
            .and_then(|a| a.profile.as_ref());
        rows.push(GradeRow {
            examinee: profile.map(|p| p.display_name()).unwrap_or_default(),
            student_number: profile
                .map(|p| p.student_number.clone())
                .unwrap_or_default(),
            attempt_no: attempt.attempt_no,
            raw_score: attempt.raw_score,
            total_questions: attempt.total(),
            weighted_score: attempt.weighted_score,
            weight: attempt.weight,
            outcome,
            started_at: attempt.started_at,
            submitted_at,
        });
    }
    Ok(GradeReport {
        exam_id,
        exam_name: exam.name.clone(),
        rows,
    })
}

fn ts(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// Comma-separated with a fixed header, CRLF line endings, fields quoted
/// when they contain separators or quotes.
pub fn grade_csv(report: &GradeReport) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    w.write_record(GRADE_CSV_HEADER).expect("in-memory write");
    for r in &report.rows {
        w.write_record([
            r.examinee.clone(),
            r.student_number.clone(),
            r.attempt_no.to_string(),
            r.raw_score.to_string(),
            r.total_questions.to_string(),
            r.weighted_score.to_string(),
            r.weight.to_string(),
            r.outcome.to_string(),
            ts(r.started_at),
            ts(r.submitted_at),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Parses the output of [`grade_csv`].
pub fn parse_grade_csv(text: &str) -> Result<Vec<GradeRow>, ReportError> {
    let bad = |e: &dyn std::fmt::Display| ReportError::Csv(e.to_string());
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| bad(&e))?;
    if header.iter().ne(GRADE_CSV_HEADER) {
        return Err(ReportError::Csv("unexpected header".into()));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let r = record.map_err(|e| bad(&e))?;
        let field = |i: usize| {
            r.get(i)
                .ok_or_else(|| ReportError::Csv(format!("missing column {i}")))
        };
        let time = |i: usize| -> Result<DateTime<Utc>, ReportError> {
            Ok(DateTime::parse_from_rfc3339(field(i)?)
                .map_err(|e| bad(&e))?
                .with_timezone(&Utc))
        };
        let tenths = {
            let s = field(5)?;
            let (whole, frac) = s
                .split_once('.')
                .ok_or_else(|| ReportError::Csv(format!("bad score {s}")))?;
            whole.parse::<u32>().map_err(|e| bad(&e))? * 10
                + frac.parse::<u32>().map_err(|e| bad(&e))?
        };
        rows.push(GradeRow {
            examinee: field(0)?.to_string(),
            student_number: field(1)?.to_string(),
            attempt_no: field(2)?.parse().map_err(|e| bad(&e))?,
            raw_score: field(3)?.parse().map_err(|e| bad(&e))?,
            total_questions: field(4)?.parse().map_err(|e| bad(&e))?,
            weighted_score: Points::from_tenths(tenths),
            weight: field(6)?.parse().map_err(|e| bad(&e))?,
            outcome: match field(7)? {
                "Passed" => Outcome::Passed,
                "Failed" => Outcome::Failed,
                other => return Err(ReportError::Csv(format!("bad outcome {other}"))),
            },
            started_at: time(8)?,
            submitted_at: time(9)?,
        });
    }
    Ok(rows)
}
