use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::Json;
use mockboard_api::{
    codes, AccountView, AnnouncementRequest, AnnouncementView, CourseRequest, CourseView,
    ExamRequest, ExamResponse, ItemAnalysisReport, QuestionBatch, QuestionRequest,
};
use mockboard_core::{AccountId, AnnouncementId, CourseId, Exam, ExamId, Question, QuestionId};
use mockboard_reporting::{grade_csv, grade_report, item_analysis_report};
use mockboard_store::{AccountStatus, ExamDraft, MajorInput, QuestionDraft, Role};
use serde::Deserialize;

use crate::auth::Caller;
use crate::error::ApiError;
use crate::extract::{ApiJson, ApiPath, ApiQuery};
use crate::{views, AppState};

fn majors(req: &CourseRequest) -> Vec<MajorInput> {
    req.majors
        .iter()
        .map(|m| MajorInput {
            major_id: m.major_id,
            name: m.name.clone(),
        })
        .collect()
}

fn exam_draft(req: ExamRequest) -> ExamDraft {
    ExamDraft {
        course_id: req.course_id,
        major_id: req.major_id,
        name: req.name,
        instructions: req.instructions,
        exam_date: req.exam_date,
        reexam_date: req.reexam_date,
        duration_minutes: req.duration_minutes,
        passing_rate: req.passing_rate,
        weight: req.weight,
    }
}

fn question_draft(req: QuestionRequest) -> QuestionDraft {
    QuestionDraft {
        stem: req.stem,
        choices: req.choices,
        correct_index: req.correct_index,
        category: req.category,
    }
}

fn not_found(code: &str, what: &str) -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, code, format!("unknown {what}"))
}

/// The exam, provided the caller administers its course.
fn admin_exam(app: &AppState, caller: &Caller, id: ExamId) -> Result<Exam, ApiError> {
    caller.require_admin()?;
    let exam = app
        .store()
        .exam(id)
        .ok_or_else(|| not_found(codes::UNKNOWN_EXAM, "exam"))?;
    caller.require_admin_of(exam.course_id)?;
    Ok(exam)
}

// Courses

pub async fn list_courses(
    State(app): State<AppState>,
    caller: Caller,
) -> Result<Json<Vec<CourseView>>, ApiError> {
    let scope = caller.require_admin()?.scope_course_id;
    let courses = app
        .store()
        .list_courses()
        .into_iter()
        .filter(|c| scope.is_none_or(|s| s == c.course_id))
        .map(views::course)
        .collect();
    Ok(Json(courses))
}

/// Course names and majors for the registration form.
pub async fn public_courses(State(app): State<AppState>) -> Json<Vec<CourseView>> {
    Json(
        app.store()
            .list_courses()
            .into_iter()
            .map(views::course)
            .collect(),
    )
}

pub async fn create_course(
    State(app): State<AppState>,
    caller: Caller,
    ApiJson(req): ApiJson<CourseRequest>,
) -> Result<(StatusCode, Json<CourseView>), ApiError> {
    let author = caller.require_unscoped_admin()?.username.clone();
    let now = app.now();
    let course = app
        .blocking(move |store| Ok(store.create_course(&req.name, &majors(&req), &author, now)?))
        .await?;
    Ok((StatusCode::CREATED, Json(views::course(course))))
}

pub async fn get_course(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<CourseId>,
) -> Result<Json<CourseView>, ApiError> {
    caller.require_admin_of(id)?;
    let course = app
        .store()
        .course(id)
        .ok_or_else(|| not_found(codes::NOT_FOUND, "course"))?;
    Ok(Json(views::course(course)))
}

pub async fn update_course(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<CourseId>,
    ApiJson(req): ApiJson<CourseRequest>,
) -> Result<Json<CourseView>, ApiError> {
    caller.require_admin_of(id)?;
    let now = app.now();
    let course = app
        .blocking(move |store| Ok(store.update_course(id, &req.name, &majors(&req), now)?))
        .await?;
    Ok(Json(views::course(course)))
}

pub async fn delete_course(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<CourseId>,
) -> Result<StatusCode, ApiError> {
    caller.require_unscoped_admin()?;
    app.blocking(move |store| Ok(store.delete_course(id)?))
        .await?;
    Ok(StatusCode::NO_CONTENT)
}

// Exams

#[derive(Debug, Deserialize)]
pub struct ExamFilter {
    pub course_id: Option<CourseId>,
}

pub async fn list_exams(
    State(app): State<AppState>,
    caller: Caller,
    ApiQuery(filter): ApiQuery<ExamFilter>,
) -> Result<Json<Vec<Exam>>, ApiError> {
    let scope = caller.require_admin()?.scope_course_id;
    if let Some(course) = filter.course_id {
        caller.require_admin_of(course)?;
    }
    let exams = app
        .store()
        .list_exams(filter.course_id.or(scope))
        .into_iter()
        .collect();
    Ok(Json(exams))
}

pub async fn create_exam(
    State(app): State<AppState>,
    caller: Caller,
    ApiJson(req): ApiJson<ExamRequest>,
) -> Result<(StatusCode, Json<ExamResponse>), ApiError> {
    caller.require_admin_of(req.course_id)?;
    let now = app.now();
    let (exam, warnings) = app
        .blocking(move |store| Ok(store.create_exam(&exam_draft(req), now)?))
        .await?;
    Ok((StatusCode::CREATED, Json(ExamResponse { exam, warnings })))
}

pub async fn get_exam(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
) -> Result<Json<Exam>, ApiError> {
    Ok(Json(admin_exam(&app, &caller, id)?))
}

pub async fn update_exam(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
    ApiJson(req): ApiJson<ExamRequest>,
) -> Result<Json<ExamResponse>, ApiError> {
    admin_exam(&app, &caller, id)?;
    caller.require_admin_of(req.course_id)?;
    let now = app.now();
    let (exam, warnings) = app
        .blocking(move |store| Ok(store.update_exam(id, &exam_draft(req), now)?))
        .await?;
    Ok(Json(ExamResponse { exam, warnings }))
}

pub async fn delete_exam(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
) -> Result<StatusCode, ApiError> {
    admin_exam(&app, &caller, id)?;
    app.blocking(move |store| Ok(store.delete_exam(id)?))
        .await?;
    Ok(StatusCode::NO_CONTENT)
}

// Questions

pub async fn list_questions(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
) -> Result<Json<Vec<Question>>, ApiError> {
    admin_exam(&app, &caller, id)?;
    Ok(Json(app.store().list_questions(id)?))
}

pub async fn add_question(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
    ApiJson(req): ApiJson<QuestionRequest>,
) -> Result<(StatusCode, Json<Question>), ApiError> {
    admin_exam(&app, &caller, id)?;
    let question = app
        .blocking(move |store| Ok(store.add_question(id, &question_draft(req))?))
        .await?;
    Ok((StatusCode::CREATED, Json(question)))
}

/// All-or-nothing bulk insert.
pub async fn add_questions(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
    ApiJson(batch): ApiJson<QuestionBatch>,
) -> Result<(StatusCode, Json<Vec<Question>>), ApiError> {
    admin_exam(&app, &caller, id)?;
    let drafts: Vec<_> = batch.questions.into_iter().map(question_draft).collect();
    let questions = app
        .blocking(move |store| Ok(store.add_questions(id, &drafts)?))
        .await?;
    Ok((StatusCode::CREATED, Json(questions)))
}

fn exam_question(app: &AppState, exam: ExamId, question: QuestionId) -> Result<Question, ApiError> {
    app.store()
        .question(question)
        .filter(|q| q.exam_id == exam)
        .ok_or_else(|| not_found(codes::UNKNOWN_QUESTION, "question"))
}

pub async fn update_question(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath((exam, qid)): ApiPath<(ExamId, QuestionId)>,
    ApiJson(req): ApiJson<QuestionRequest>,
) -> Result<Json<Question>, ApiError> {
    admin_exam(&app, &caller, exam)?;
    exam_question(&app, exam, qid)?;
    let question = app
        .blocking(move |store| Ok(store.update_question(qid, &question_draft(req))?))
        .await?;
    Ok(Json(question))
}

pub async fn delete_question(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath((exam, qid)): ApiPath<(ExamId, QuestionId)>,
) -> Result<StatusCode, ApiError> {
    admin_exam(&app, &caller, exam)?;
    exam_question(&app, exam, qid)?;
    app.blocking(move |store| Ok(store.delete_question(qid)?))
        .await?;
    Ok(StatusCode::NO_CONTENT)
}

// Accounts

#[derive(Debug, Deserialize)]
pub struct AccountFilter {
    pub status: Option<String>,
}

fn parse_status(raw: &str) -> Result<AccountStatus, ApiError> {
    match raw.to_ascii_lowercase().as_str() {
        "pending" => Ok(AccountStatus::Pending),
        "verified" => Ok(AccountStatus::Verified),
        "disabled" => Ok(AccountStatus::Disabled),
        _ => Err(ApiError::field(
            "status",
            "expected pending, verified or disabled",
        )),
    }
}

/// Examinee accounts, optionally by status, limited to the admin's course.
pub async fn list_accounts(
    State(app): State<AppState>,
    caller: Caller,
    ApiQuery(filter): ApiQuery<AccountFilter>,
) -> Result<Json<Vec<AccountView>>, ApiError> {
    let scope = caller.require_admin()?.scope_course_id;
    let status = filter.status.as_deref().map(parse_status).transpose()?;
    let accounts = app.store().list_accounts(Some(Role::Examinee), status);
    let views = app.store().read(|s| {
        accounts
            .iter()
            .filter(|a| scope.is_none() || a.course_id() == scope)
            .map(|a| views::account(s, a))
            .collect()
    });
    Ok(Json(views))
}

async fn set_status(
    app: AppState,
    caller: Caller,
    id: AccountId,
    status: AccountStatus,
) -> Result<Json<AccountView>, ApiError> {
    caller.require_admin()?;
    let target = app
        .store()
        .account(id)
        .ok_or_else(|| not_found(codes::UNKNOWN_ACCOUNT, "account"))?;
    match (target.role, target.course_id()) {
        (Role::Examinee, Some(course)) => caller.require_admin_of(course)?,
        _ => caller.require_unscoped_admin()?,
    };
    if target.account_id == caller.id() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            codes::CONFLICT,
            "cannot change your own status",
        ));
    }
    let now = app.now();
    let account = app
        .blocking(move |store| Ok(store.set_account_status(id, status, now)?))
        .await?;
    Ok(Json(app.store().read(|s| views::account(s, &account))))
}

pub async fn verify_account(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AccountId>,
) -> Result<Json<AccountView>, ApiError> {
    set_status(app, caller, id, AccountStatus::Verified).await
}

pub async fn disable_account(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AccountId>,
) -> Result<Json<AccountView>, ApiError> {
    set_status(app, caller, id, AccountStatus::Disabled).await
}

// Announcements

pub async fn list_announcements(
    State(app): State<AppState>,
    _caller: Caller,
) -> Json<Vec<AnnouncementView>> {
    Json(
        app.store()
            .list_announcements()
            .into_iter()
            .map(views::announcement)
            .collect(),
    )
}

pub async fn post_announcement(
    State(app): State<AppState>,
    caller: Caller,
    ApiJson(req): ApiJson<AnnouncementRequest>,
) -> Result<(StatusCode, Json<AnnouncementView>), ApiError> {
    let author = caller.require_admin()?.username.clone();
    let now = app.now();
    let a = app
        .blocking(move |store| Ok(store.post_announcement(&req.body, &author, now)?))
        .await?;
    Ok((StatusCode::CREATED, Json(views::announcement(a))))
}

pub async fn delete_announcement(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<AnnouncementId>,
) -> Result<StatusCode, ApiError> {
    caller.require_admin()?;
    app.blocking(move |store| Ok(store.delete_announcement(id)?))
        .await?;
    Ok(StatusCode::NO_CONTENT)
}

// Reports

/// JSON by default; a `.csv` suffix on the exam id selects CSV.
pub async fn grades(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(raw): ApiPath<String>,
) -> Result<Response, ApiError> {
    let (id, csv) = match raw.strip_suffix(".csv") {
        Some(id) => (id, true),
        None => (raw.as_str(), false),
    };
    let id: ExamId = id
        .parse()
        .map_err(|_| not_found(codes::UNKNOWN_EXAM, "exam"))?;
    admin_exam(&app, &caller, id)?;
    let now = app.now();
    let report = app
        .blocking(move |store| {
            store.finalize_expired(None, now)?;
            Ok(store.read(|s| grade_report(s, id))?)
        })
        .await?;
    if csv {
        Ok((
            [(header::CONTENT_TYPE, "text/csv; charset=utf-8")],
            grade_csv(&report),
        )
            .into_response())
    } else {
        Ok(Json(report).into_response())
    }
}

pub async fn item_analysis(
    State(app): State<AppState>,
    caller: Caller,
    ApiPath(id): ApiPath<ExamId>,
) -> Result<Json<ItemAnalysisReport>, ApiError> {
    admin_exam(&app, &caller, id)?;
    let now = app.now();
    let report = app
        .blocking(move |store| {
            store.finalize_expired(None, now)?;
            Ok(store.read(|s| item_analysis_report(s, id))?)
        })
        .await?;
    Ok(Json(report))
}
