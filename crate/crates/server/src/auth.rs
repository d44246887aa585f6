use std::collections::HashMap;
use std::sync::OnceLock;

use axum::extract::FromRequestParts;
use axum::http::header::AUTHORIZATION;
use axum::http::request::Parts;
use chrono::{DateTime, Duration, Utc};
use mockboard_core::{AccountId, CourseId};
use mockboard_store::{Account, AccountStatus, PasswordDigest, Role};
use parking_lot::Mutex;
use rand::RngCore;

use crate::error::ApiError;
use crate::AppState;

#[derive(Debug, Clone, Copy)]
struct Session {
    account_id: AccountId,
    expires_at: DateTime<Utc>,
}

/// Bearer tokens held in memory; a restart signs everyone out.
#[derive(Debug)]
pub struct Sessions {
    ttl: Duration,
    by_token: Mutex<HashMap<String, Session>>,
}

impl Sessions {
    pub fn new(ttl: Duration) -> Self {
        Sessions {
            ttl,
            by_token: Mutex::new(HashMap::new()),
        }
    }

    /// Issues a fresh 128-bit token.
    pub fn issue(&self, account_id: AccountId, now: DateTime<Utc>) -> (String, DateTime<Utc>) {
        let mut bytes = [0u8; 16];
        rand::rngs::OsRng.fill_bytes(&mut bytes);
        let token = hex::encode(bytes);
        let expires_at = now + self.ttl;
        let mut map = self.by_token.lock();
        map.retain(|_, s| s.expires_at > now);
        map.insert(
            token.clone(),
            Session {
                account_id,
                expires_at,
            },
        );
        (token, expires_at)
    }

    pub fn resolve(&self, token: &str, now: DateTime<Utc>) -> Option<AccountId> {
        let mut map = self.by_token.lock();
        match map.get(token) {
            Some(s) if s.expires_at > now => Some(s.account_id),
            Some(_) => {
                map.remove(token);
                None
            }
            None => None,
        }
    }

    pub fn revoke(&self, token: &str) -> bool {
        self.by_token.lock().remove(token).is_some()
    }
}

/// Verifies a password against the stored digest. Unknown usernames are
/// checked against a throwaway digest so both paths cost the same.
pub fn check_password(account: Option<&Account>, password: &str) -> bool {
    static DECOY: OnceLock<PasswordDigest> = OnceLock::new();
    match account {
        Some(a) => a.password.verify(password),
        None => {
            DECOY
                .get_or_init(|| PasswordDigest::new("decoy"))
                .verify(password);
            false
        }
    }
}

/// The authenticated account behind a request.
#[derive(Debug, Clone)]
pub struct Caller {
    pub account: Account,
    pub token: String,
}

impl Caller {
    pub fn id(&self) -> AccountId {
        self.account.account_id
    }

    pub fn require_admin(&self) -> Result<&Account, ApiError> {
        match self.account.role {
            Role::Admin => Ok(&self.account),
            Role::Examinee => Err(ApiError::forbidden()),
        }
    }

    pub fn require_examinee(&self) -> Result<&Account, ApiError> {
        match self.account.role {
            Role::Examinee => Ok(&self.account),
            Role::Admin => Err(ApiError::forbidden()),
        }
    }

    /// Admin limited to its course, if scoped.
    pub fn require_admin_of(&self, course: CourseId) -> Result<&Account, ApiError> {
        let admin = self.require_admin()?;
        match admin.scope_course_id {
            Some(scope) if scope != course => Err(ApiError::forbidden()),
            _ => Ok(admin),
        }
    }

    pub fn require_unscoped_admin(&self) -> Result<&Account, ApiError> {
        let admin = self.require_admin()?;
        match admin.scope_course_id {
            Some(_) => Err(ApiError::forbidden()),
            None => Ok(admin),
        }
    }
}

impl FromRequestParts<AppState> for Caller {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, ApiError> {
        let token = parts
            .headers
            .get(AUTHORIZATION)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.strip_prefix("Bearer "))
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .ok_or_else(ApiError::unauthenticated)?;
        let account_id = state
            .sessions()
            .resolve(token, state.now())
            .ok_or_else(ApiError::unauthenticated)?;
        let account = state
            .store()
            .account(account_id)
            .ok_or_else(ApiError::unauthenticated)?;
        if account.status != AccountStatus::Verified {
            state.sessions().revoke(token);
            return Err(ApiError::unauthenticated());
        }
        Ok(Caller {
            account,
            token: token.to_string(),
        })
    }
}
