//! Durable single-node persistence for the mock-board examination service.
//!
//! All entities live in memory behind a reader/writer lock. Every mutation
//! is validated, appended to an on-disk journal, applied, and acknowledged
//! only after the journal is synced. A compacted snapshot is written every
//! few thousand records; recovery loads the snapshot and replays the journal.

mod accounts;
mod attempts;
mod catalog;
pub mod eligibility;
mod error;
pub mod export;
mod journal;
pub mod model;
pub mod password;
pub mod state;
mod store;

pub use accounts::validate_username;
pub use attempts::ExamEntry;
pub use catalog::{ExamDraft, MajorInput, QuestionDraft};
pub use eligibility::{EligibleExam, ExamStatus};
pub use error::{Result, StoreError};
pub use model::{Account, AccountStatus, Announcement, Course, ExamineeProfile, Major, Role};
pub use password::PasswordDigest;
pub use state::State;
pub use store::{Store, StoreConfig};
