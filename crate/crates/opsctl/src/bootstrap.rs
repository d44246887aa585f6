//! Offline account bootstrap on a data directory.

use chrono::{DateTime, Utc};
use mockboard_core::{AccountId, CourseId};
use mockboard_store::{Account, AccountStatus, PasswordDigest, Role, Store};

use crate::OpsError;

/// Finds a course by id or by case-insensitive name.
pub fn resolve_course(store: &Store, key: &str) -> Result<CourseId, OpsError> {
    if let Ok(id) = key.parse::<CourseId>() {
        if store.course(id).is_some() {
            return Ok(id);
        }
    }
    store
        .list_courses()
        .into_iter()
        .find(|c| c.name.eq_ignore_ascii_case(key.trim()))
        .map(|c| c.course_id)
        .ok_or_else(|| OpsError::Usage(format!("no course named {key:?}")))
}

/// Creates an admin that can sign in immediately.
pub fn init_admin(
    store: &Store,
    username: &str,
    password: &str,
    scope: Option<&str>,
    now: DateTime<Utc>,
) -> Result<Account, OpsError> {
    if password.chars().count() < 8 {
        return Err(OpsError::Usage(
            "password must be at least 8 characters".into(),
        ));
    }
    let scope_course_id = scope.map(|s| resolve_course(store, s)).transpose()?;
    let account = Account {
        account_id: AccountId::new(),
        username: username.trim().to_string(),
        password: PasswordDigest::new(password),
        role: Role::Admin,
        status: AccountStatus::Verified,
        scope_course_id,
        profile: None,
        created_at: now,
        updated_at: None,
    };
    Ok(store.create_account(account)?)
}
