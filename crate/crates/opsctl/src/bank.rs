//! Question-bank CSV: one row per question, choices in columns A to E and
//! the correct choice as a letter.

use std::io::Read;

use mockboard_api::QuestionRequest;
use mockboard_core::Question;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BANK_HEADER: [&str; 9] = [
    "exam_name",
    "stem",
    "choice_a",
    "choice_b",
    "choice_c",
    "choice_d",
    "choice_e",
    "correct",
    "category",
];

const LETTERS: [char; 5] = ['A', 'B', 'C', 'D', 'E'];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BankError {
    #[error("line {line}: {message}")]
    Schema { line: u64, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionBankRow {
    /// Informational on import; the target exam is chosen by the caller.
    pub exam_name: String,
    pub stem: String,
    pub choice_a: String,
    pub choice_b: String,
    pub choice_c: Option<String>,
    pub choice_d: Option<String>,
    pub choice_e: Option<String>,
    pub correct: String,
    pub category: Option<String>,
}

impl QuestionBankRow {
    pub fn from_question(exam_name: &str, q: &Question) -> Self {
        let choice = |i: usize| q.choices.get(i).cloned();
        QuestionBankRow {
            exam_name: exam_name.to_string(),
            stem: q.stem.clone(),
            choice_a: choice(0).unwrap_or_default(),
            choice_b: choice(1).unwrap_or_default(),
            choice_c: choice(2),
            choice_d: choice(3),
            choice_e: choice(4),
            correct: LETTERS[usize::from(q.correct_index)].to_string(),
            category: q.category.clone(),
        }
    }

    pub fn to_request(&self) -> Result<QuestionRequest, String> {
        if self.stem.trim().is_empty() {
            return Err("stem is empty".into());
        }
        let slots = [
            Some(&self.choice_a),
            Some(&self.choice_b),
            self.choice_c.as_ref(),
            self.choice_d.as_ref(),
            self.choice_e.as_ref(),
        ];
        let present: Vec<bool> = slots
            .iter()
            .map(|c| c.is_some_and(|c| !c.trim().is_empty()))
            .collect();
        let count = present.iter().take_while(|p| **p).count();
        if count < 2 {
            return Err("choices A and B are required".into());
        }
        if present[count..].iter().any(|p| *p) {
            return Err("choices must be filled in order without gaps".into());
        }
        let letter = self.correct.trim().to_ascii_uppercase();
        let index = match letter.chars().collect::<Vec<_>>().as_slice() {
            [c] => LETTERS.iter().position(|l| l == c),
            _ => None,
        }
        .ok_or_else(|| format!("correct must be a letter A to E, got {:?}", self.correct))?;
        if index >= count {
            return Err(format!("correct letter {letter} has no choice"));
        }
        Ok(QuestionRequest {
            stem: self.stem.clone(),
            choices: slots[..count]
                .iter()
                .map(|c| c.expect("present").clone())
                .collect(),
            correct_index: index as u8,
            category: self.category.clone().filter(|c| !c.trim().is_empty()),
        })
    }
}

/// Parses and validates every row. Any bad row fails the whole file with
/// its line number, so nothing is imported.
pub fn parse_bank(input: impl Read) -> Result<Vec<QuestionRequest>, BankError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let headers = reader.headers().map_err(|e| BankError::Schema {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().map(str::trim).ne(BANK_HEADER) {
        return Err(BankError::Schema {
            line: 1,
            message: format!("expected header {}", BANK_HEADER.join(",")),
        });
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| BankError::Schema {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row: QuestionBankRow = record.deserialize(None).map_err(|e| BankError::Schema {
            line,
            message: e.to_string(),
        })?;
        out.push(
            row.to_request()
                .map_err(|message| BankError::Schema { line, message })?,
        );
    }
    Ok(out)
}

pub fn write_bank(exam_name: &str, questions: &[Question]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .has_headers(false)
        .from_writer(Vec::new());
    writer.write_record(BANK_HEADER).expect("in-memory write");
    for q in questions {
        writer
            .serialize(QuestionBankRow::from_question(exam_name, q))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bank(rows: &[&str]) -> String {
        let mut text = BANK_HEADER.join(",");
        for r in rows {
            text.push('\n');
            text.push_str(r);
        }
        text
    }

    #[test]
    fn ten_valid_rows() {
        let rows: Vec<String> = (0..10)
            .map(|i| {
                format!(
                    "Criminalistics,Question {i},a,b,c,d,,{},ballistics",
                    ["A", "B", "C", "D"][i % 4]
                )
            })
            .collect();
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        let parsed = parse_bank(bank(&refs).as_bytes()).unwrap();
        assert_eq!(parsed.len(), 10);
        assert_eq!(parsed[3].correct_index, 3);
        assert_eq!(parsed[3].choices.len(), 4);
        assert_eq!(parsed[0].category.as_deref(), Some("ballistics"));
    }

    #[test]
    fn bad_letter_reports_its_line() {
        let text = bank(&["X,Q1,a,b,,,,A,", "X,Q2,a,b,c,,,F,", "X,Q3,a,b,,,,B,"]);
        assert_eq!(
            parse_bank(text.as_bytes()).unwrap_err(),
            BankError::Schema {
                line: 3,
                message: "correct must be a letter A to E, got \"F\"".into()
            }
        );
    }

    #[test]
    fn structural_errors() {
        let cases = [
            ("X,Q,a,,,,,A,", "choices A and B are required"),
            (
                "X,Q,a,b,,d,,A,",
                "choices must be filled in order without gaps",
            ),
            ("X,Q,a,b,,,,C,", "correct letter C has no choice"),
            ("X, ,a,b,,,,A,", "stem is empty"),
        ];
        for (row, message) in cases {
            match parse_bank(bank(&[row]).as_bytes()).unwrap_err() {
                BankError::Schema { line, message: m } => {
                    assert_eq!(line, 2);
                    assert_eq!(m, message);
                }
            }
        }
        let wrong_header = "exam,stem\nX,Q";
        assert!(matches!(
            parse_bank(wrong_header.as_bytes()),
            Err(BankError::Schema { line: 1, .. })
        ));
    }

    #[test]
    fn lowercase_letters_are_accepted() {
        let parsed = parse_bank(bank(&["X,Q,a,b,c,d,e,e,"]).as_bytes()).unwrap();
        assert_eq!(parsed[0].correct_index, 4);
        assert_eq!(parsed[0].category, None);
    }
}
