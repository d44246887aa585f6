use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::Json;
use mockboard_api::{
    codes, AnnouncementView, AnswerAck, AnswerRequest, AttemptView, DashboardResponse, ResultView,
    StartAttemptRequest,
};
use mockboard_core::{AccountId, Attempt, AttemptId, QuestionId};
use mockboard_reporting::{build_certificate, certificate_html};
use mockboard_store::Role;
use serde::Deserialize;

use crate::auth::Caller;
use crate::error::ApiError;
use crate::extract::{ApiJson, ApiPath, ApiQuery};
use crate::{views, AppState};

/// Loads an attempt the caller may see: its examinee, or an admin of the
/// exam's course when `admin_ok`.
fn visible_attempt(
    app: &AppState,
    caller: &Caller,
    id: AttemptId,
    admin_ok: bool,
) -> Result<Attempt, ApiError> {
    let attempt = app.store().attempt(id).ok_or_else(|| {
        ApiError::new(
            StatusCode::NOT_FOUND,
            codes::UNKNOWN_ATTEMPT,
            "unknown attempt",
        )
    })?;
    match caller.account.role {
        Role::Examinee if attempt.examinee_id == caller.id() => Ok(attempt),
        Role::Admin if admin_ok => {
            let course = app.store().exam(attempt.exam_id).map(|e| e.course_id);
            match course {
                Some(course) => caller.require_admin_of(course).map(|_| attempt),
                None => caller.require_unscoped_admin().map(|_| attempt),
            }
        }
        _ => Err(ApiError::forbidden()),
    }
}

fn expired() -> ApiError {
    ApiError::new(
        StatusCode::CONFLICT,
        codes::EXPIRED,
        "time is up; the attempt has been submitted",
    )
}

pub async fn dashboard(
    State(app): State<AppState>,
    caller: Caller,
) -> Result<Json<DashboardResponse>, ApiError> {
    caller.require_examinee()?;
    let now = app.now();
    let id = caller.id();
    let account = caller.account.clone();
    let response = app
        .blocking(move |store| {
            store.finalize_expired(Some(id), now)?;
            let exams = store
                .eligible_exams(id, now)?
                .into_iter()
                .map(views::dashboard_row)
                .collect();
            let announcements: Vec<AnnouncementView> = store
                .list_announcements()
                .into_iter()
                .map(views::announcement)
                .collect();
            Ok(DashboardResponse {
                account: store.read(|s| views::account(s, &account)),
                exams,
                announcements,
            })
        })
        .await?;
    Ok(Json(response))
}

/// Starts an attempt, or resumes the one already in progress.
pub async fn start_attempt(
    State(app): State<AppState>,
    caller: Caller,
    ApiJson(req): ApiJson<StartAttemptRequest>,
) -> Result<(StatusCode, Json<AttemptView>), ApiError> {
    caller.require_examinee()?;
    let now = app.now();
    let id = caller.id();
    let seed: u64 = rand::random();
    let (view, resumed) = app
        .blocking(move |store| {
            let (attempt, resumed) = store.start_attempt(id, req.exam_id, now, seed)?;
            let view = store.read(|s| {
                let exam = s.exam(attempt.exam_id).expect("attempt's exam exists");
                views::attempt(s, exam, &attempt, now)
            });
            Ok((view, resumed))
        })
        .await?;
    let status = if resumed {
        StatusCode::OK
    } else {
        StatusCode::CREATED
    };
    Ok((status, Json(view)))
}

pub async fn get_attempt(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AttemptId>,
) -> Result<Json<AttemptView>, ApiError> {
    caller.require_examinee()?;
    let attempt = visible_attempt(&app, &caller, id, false)?;
    let now = app.now();
    if attempt.is_finalized() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            codes::ALREADY_FINALIZED,
            "attempt already submitted",
        ));
    }
    if app.past_grace(&attempt, now) {
        app.blocking(move |store| Ok(store.finalize_attempt(id, now)?))
            .await?;
        return Err(expired());
    }
    let view = app.store().read(|s| {
        let exam = s.exam(attempt.exam_id).expect("attempt's exam exists");
        views::attempt(s, exam, &attempt, now)
    });
    Ok(Json(view))
}

/// Saves one answer. Only the server clock decides whether it is in time.
pub async fn save_answer(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath((id, question_id)): ApiPath<(AttemptId, QuestionId)>,
    ApiJson(req): ApiJson<AnswerRequest>,
) -> Result<Json<AnswerAck>, ApiError> {
    caller.require_examinee()?;
    visible_attempt(&app, &caller, id, false)?;
    let now = app.now();
    let attempt = app
        .blocking(move |store| Ok(store.record_answer(id, question_id, req.choice, now)?))
        .await
        .map_err(|e| {
            if e.body.code == codes::EXPIRED {
                expired()
            } else {
                e
            }
        })?;
    Ok(Json(AnswerAck {
        question_id,
        choice: req.choice,
        answered: attempt.answers.len() as u32,
        remaining_seconds: views::remaining(&attempt, now),
    }))
}

pub async fn submit(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AttemptId>,
) -> Result<Json<ResultView>, ApiError> {
    caller.require_examinee()?;
    visible_attempt(&app, &caller, id, false)?;
    let now = app.now();
    let done = app
        .blocking(move |store| Ok(store.finalize_attempt(id, now)?))
        .await?;
    result_json(&app, &done)
}

pub async fn result(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AttemptId>,
) -> Result<Json<ResultView>, ApiError> {
    let mut attempt = visible_attempt(&app, &caller, id, true)?;
    let now = app.now();
    if !attempt.is_finalized() {
        if !app.past_grace(&attempt, now) {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                codes::NOT_FINALIZED,
                "attempt is still in progress",
            ));
        }
        attempt = app
            .blocking(move |store| Ok(store.finalize_attempt(id, now)?))
            .await?;
    }
    result_json(&app, &attempt)
}

fn result_json(app: &AppState, attempt: &Attempt) -> Result<Json<ResultView>, ApiError> {
    let name = app
        .store()
        .exam(attempt.exam_id)
        .map(|e| e.name)
        .unwrap_or_default();
    views::result(&name, attempt)
        .map(Json)
        .ok_or_else(|| ApiError::internal("finalized attempt without outcome"))
}

#[derive(Debug, Deserialize)]
pub struct CertificateQuery {
    pub examinee_id: Option<AccountId>,
    pub format: Option<String>,
}

/// Examinees get their own certificate; admins name the examinee.
pub async fn certificate(
    State(app): State<AppState>,
    caller: Caller,
    ApiQuery(query): ApiQuery<CertificateQuery>,
) -> Result<Response, ApiError> {
    let examinee = match caller.account.role {
        Role::Examinee => match query.examinee_id {
            Some(other) if other != caller.id() => return Err(ApiError::forbidden()),
            _ => caller.id(),
        },
        Role::Admin => {
            let id = query
                .examinee_id
                .ok_or_else(|| ApiError::field("examinee_id", "required for admins"))?;
            let account = app.store().account(id).ok_or_else(|| {
                ApiError::new(
                    StatusCode::NOT_FOUND,
                    codes::UNKNOWN_EXAMINEE,
                    "unknown examinee",
                )
            })?;
            match account.course_id() {
                Some(course) => caller.require_admin_of(course)?,
                None => caller.require_unscoped_admin()?,
            };
            id
        }
    };
    let now = app.now();
    let threshold = app.config().passing_threshold;
    let cert = app
        .blocking(move |store| {
            store.finalize_expired(Some(examinee), now)?;
            Ok(store.read(|s| build_certificate(s, examinee, threshold, now))?)
        })
        .await?;
    match query.format.as_deref() {
        None | Some("json") => Ok(Json(cert).into_response()),
        Some("html") => Ok((
            [(header::CACHE_CONTROL, "no-store")],
            Html(certificate_html(&cert)),
        )
            .into_response()),
        Some(_) => Err(ApiError::field("format", "expected json or html")),
    }
}
