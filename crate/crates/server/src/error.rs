use axum::extract::rejection::{JsonRejection, PathRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use mockboard_api::{codes, ErrorBody};
use mockboard_core::CoreError;
use mockboard_reporting::ReportError;
use mockboard_store::StoreError;

/// A failed request: HTTP status plus the JSON envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                code: code.to_string(),
                message: message.into(),
                fields: None,
            },
        }
    }

    pub fn unauthenticated() -> Self {
        Self::new(
            StatusCode::UNAUTHORIZED,
            codes::UNAUTHENTICATED,
            "sign in required",
        )
    }

    pub fn forbidden() -> Self {
        Self::new(
            StatusCode::FORBIDDEN,
            codes::FORBIDDEN,
            "not permitted for this account",
        )
    }

    pub fn bad_credentials() -> Self {
        Self::new(
            StatusCode::UNAUTHORIZED,
            codes::BAD_CREDENTIALS,
            "invalid username or password",
        )
    }

    pub fn field(field: &str, message: &str) -> Self {
        let mut err = Self::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            codes::VALIDATION_FAILED,
            "validation failed",
        );
        err.body.fields = Some([(field.to_string(), message.to_string())].into());
        err
    }

    pub fn internal(message: impl std::fmt::Display) -> Self {
        tracing::error!(%message, "internal error");
        Self::new(
            StatusCode::INTERNAL_SERVER_ERROR,
            codes::INTERNAL,
            "internal error",
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::WeightOverflow { .. } => Self::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                codes::WEIGHT_OVERFLOW,
                e.to_string(),
            ),
            CoreError::UnknownQuestion(_) => Self::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                codes::UNKNOWN_QUESTION,
                e.to_string(),
            ),
            other => Self::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                codes::VALIDATION_FAILED,
                other.to_string(),
            ),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        use StatusCode as S;
        let message = e.to_string();
        match e {
            StoreError::DuplicateKey(_) => Self::new(S::CONFLICT, codes::DUPLICATE_KEY, message),
            StoreError::ForeignKeyMissing(_) => {
                Self::new(S::UNPROCESSABLE_ENTITY, codes::FOREIGN_KEY_MISSING, message)
            }
            StoreError::DeleteRestricted(_) => {
                Self::new(S::CONFLICT, codes::DELETE_RESTRICTED, message)
            }
            StoreError::Conflict(_) => Self::new(S::CONFLICT, codes::CONFLICT, message),
            StoreError::Validation(fields) => {
                let mut err = Self::new(S::UNPROCESSABLE_ENTITY, codes::VALIDATION_FAILED, message);
                err.body.fields = Some(fields);
                err
            }
            StoreError::NotFound(what) => {
                let code = match what {
                    "attempt" => codes::UNKNOWN_ATTEMPT,
                    "exam" => codes::UNKNOWN_EXAM,
                    "account" => codes::UNKNOWN_ACCOUNT,
                    "question" => codes::UNKNOWN_QUESTION,
                    _ => codes::NOT_FOUND,
                };
                Self::new(S::NOT_FOUND, code, message)
            }
            StoreError::NotVerified => Self::new(S::FORBIDDEN, codes::NOT_VERIFIED, message),
            StoreError::NotEligible => Self::new(S::FORBIDDEN, codes::NOT_ELIGIBLE, message),
            StoreError::NotOpen => Self::new(S::CONFLICT, codes::NOT_OPEN, message),
            StoreError::AlreadyTaken => Self::new(S::CONFLICT, codes::ALREADY_TAKEN, message),
            StoreError::Expired => Self::new(S::CONFLICT, codes::EXPIRED, message),
            StoreError::UnknownQuestion => {
                Self::new(S::UNPROCESSABLE_ENTITY, codes::UNKNOWN_QUESTION, message)
            }
            StoreError::InvalidChoice => Self::field("choice", "choice index out of range"),
            StoreError::AlreadyFinalized => {
                Self::new(S::CONFLICT, codes::ALREADY_FINALIZED, message)
            }
            StoreError::NonEmptyStore => Self::new(S::CONFLICT, codes::CONFLICT, message),
            StoreError::Core(core) => core.into(),
            StoreError::Corrupt(_) | StoreError::Io(_) => Self::internal(message),
        }
    }
}

impl From<ReportError> for ApiError {
    fn from(e: ReportError) -> Self {
        let message = e.to_string();
        match e {
            ReportError::UnknownExaminee => {
                Self::new(StatusCode::NOT_FOUND, codes::UNKNOWN_EXAMINEE, message)
            }
            ReportError::NotVerified => {
                Self::new(StatusCode::FORBIDDEN, codes::NOT_VERIFIED, message)
            }
            ReportError::UnknownExam => {
                Self::new(StatusCode::NOT_FOUND, codes::UNKNOWN_EXAM, message)
            }
            ReportError::Core(core) => core.into(),
            ReportError::Csv(_) => Self::internal(message),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, codes::BAD_REQUEST, e.body_text())
    }
}

impl From<PathRejection> for ApiError {
    fn from(e: PathRejection) -> Self {
        Self::new(StatusCode::NOT_FOUND, codes::NOT_FOUND, e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        Self::new(StatusCode::BAD_REQUEST, codes::BAD_REQUEST, e.body_text())
    }
}

impl From<tokio::task::JoinError> for ApiError {
    fn from(e: tokio::task::JoinError) -> Self {
        Self::internal(e)
    }
}
