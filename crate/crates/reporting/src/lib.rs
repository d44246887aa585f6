//! Derived documents built from a read-only view of the store.

mod certificate;
mod grades;
mod html;
mod items;

use mockboard_core::CoreError;
use thiserror::Error;

pub use mockboard_api::{
    Certificate, CertificateRow, GradeReport, GradeRow, ItemAnalysisReport, ItemRow,
};

pub use certificate::build_certificate;
pub use grades::{grade_csv, grade_report, parse_grade_csv, GRADE_CSV_HEADER};
pub use html::certificate_html;
pub use items::{item_analysis_report, review_flag, REVIEW_FLAG};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown examinee")]
    UnknownExaminee,
    #[error("examinee is not verified")]
    NotVerified,
    #[error("unknown exam")]
    UnknownExam,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("csv: {0}")]
    Csv(String),
}
