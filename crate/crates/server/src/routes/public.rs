use axum::extract::State;
use axum::http::StatusCode;
use axum::Json;
use mockboard_api::{codes, AccountView, Health, LoginRequest, LoginResponse, RegisterRequest};
use mockboard_core::AccountId;
use mockboard_store::{Account, AccountStatus, ExamineeProfile, PasswordDigest, Role};

use crate::auth::{check_password, Caller};
use crate::error::ApiError;
use crate::extract::ApiJson;
use crate::{views, AppState};

pub const MIN_PASSWORD_CHARS: usize = 8;

pub async fn health() -> Json<Health> {
    Json(Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

/// Self-registration. The account stays pending until an admin verifies it.
pub async fn register(
    State(app): State<AppState>,
    ApiJson(req): ApiJson<RegisterRequest>,
) -> Result<(StatusCode, Json<AccountView>), ApiError> {
    if req.password.chars().count() < MIN_PASSWORD_CHARS {
        return Err(ApiError::field(
            "password",
            "password must be at least 8 characters",
        ));
    }
    let now = app.now();
    let view = app
        .blocking(move |store| {
            let account = Account {
                account_id: AccountId::new(),
                username: req.username.trim().to_string(),
                password: PasswordDigest::new(&req.password),
                role: Role::Examinee,
                status: AccountStatus::Pending,
                scope_course_id: None,
                profile: Some(ExamineeProfile {
                    student_number: req.student_number.trim().to_string(),
                    last_name: req.last_name.trim().to_string(),
                    first_name: req.first_name.trim().to_string(),
                    middle_name: req.middle_name.trim().to_string(),
                    address: req.address.trim().to_string(),
                    contact_number: req.contact_number.trim().to_string(),
                    birthdate: req.birthdate,
                    course_id: req.course_id,
                    major_id: req.major_id,
                    terms_accepted: req.terms_accepted,
                }),
                created_at: now,
                updated_at: None,
            };
            let account = store.create_account(account)?;
            Ok(store.read(|s| views::account(s, &account)))
        })
        .await?;
    Ok((StatusCode::CREATED, Json(view)))
}

pub async fn login(
    State(app): State<AppState>,
    ApiJson(req): ApiJson<LoginRequest>,
) -> Result<Json<LoginResponse>, ApiError> {
    let account = app.store().account_by_username(req.username.trim());
    let (account, ok) = app
        .blocking(move |_| {
            let ok = check_password(account.as_ref(), &req.password);
            Ok((account, ok))
        })
        .await?;
    let account = match account {
        Some(a) if ok => a,
        _ => return Err(ApiError::bad_credentials()),
    };
    match account.status {
        AccountStatus::Verified => {}
        AccountStatus::Pending => {
            return Err(ApiError::new(
                StatusCode::FORBIDDEN,
                codes::AWAITING_VERIFICATION,
                "account is awaiting admin verification",
            ))
        }
        AccountStatus::Disabled => {
            return Err(ApiError::new(
                StatusCode::FORBIDDEN,
                codes::ACCOUNT_DISABLED,
                "account is disabled",
            ))
        }
    }
    let (token, expires_at) = app.sessions().issue(account.account_id, app.now());
    tracing::info!(username = %account.username, "signed in");
    Ok(Json(LoginResponse {
        token,
        account_id: account.account_id,
        role: views::role(account.role),
        expires_at,
    }))
}

pub async fn logout(State(app): State<AppState>, caller: Caller) -> StatusCode {
    app.sessions().revoke(&caller.token);
    StatusCode::NO_CONTENT
}

pub async fn me(State(app): State<AppState>, caller: Caller) -> Json<AccountView> {
    Json(app.store().read(|s| views::account(s, &caller.account)))
}
