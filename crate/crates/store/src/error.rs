use mockboard_core::model::FieldErrors;
use mockboard_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("duplicate {0}")]
    DuplicateKey(&'static str),
    #[error("referenced {0} does not exist")]
    ForeignKeyMissing(&'static str),
    #[error("cannot delete: {0}")]
    DeleteRestricted(&'static str),
    #[error("conflict: {0}")]
    Conflict(&'static str),
    #[error("validation failed")]
    Validation(FieldErrors),
    #[error("unknown {0}")]
    NotFound(&'static str),
    #[error("examinee is not verified")]
    NotVerified,
    #[error("exam is not eligible for this examinee")]
    NotEligible,
    #[error("exam is not open yet")]
    NotOpen,
    #[error("exam already taken")]
    AlreadyTaken,
    #[error("attempt deadline has passed")]
    Expired,
    #[error("question is not part of this attempt")]
    UnknownQuestion,
    #[error("choice index out of range")]
    InvalidChoice,
    #[error("attempt already finalized")]
    AlreadyFinalized,
    #[error("store already contains data")]
    NonEmptyStore,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("journal corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl StoreError {
    pub fn field(field: &str, message: impl Into<String>) -> Self {
        StoreError::Validation(FieldErrors::from([(field.to_string(), message.into())]))
    }
}

pub type Result<T, E = StoreError> = std::result::Result<T, E>;
