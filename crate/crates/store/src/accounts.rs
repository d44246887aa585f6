use chrono::{DateTime, Utc};
use mockboard_core::model::FieldErrors;
use mockboard_core::{validate_student_number, AccountId};

use crate::model::{Account, AccountStatus, ExamineeProfile, Role};
use crate::state::{Change, State};
use crate::store::Store;
use crate::{Result, StoreError};

/// 3 to 32 characters from `[A-Za-z0-9._-]`.
pub fn validate_username(username: &str) -> Option<&'static str> {
    let len = username.chars().count();
    if !(3..=32).contains(&len) {
        return Some("username must be 3 to 32 characters");
    }
    if !username
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
    {
        return Some("username may contain only letters, digits, '.', '_' and '-'");
    }
    None
}

fn validate_profile(state: &State, profile: &ExamineeProfile, errors: &mut FieldErrors) {
    if !profile.terms_accepted {
        errors.insert(
            "terms_accepted".into(),
            "the terms and conditions must be accepted".into(),
        );
    }
    if !validate_student_number(&profile.student_number) {
        errors.insert(
            "student_number".into(),
            "student number must use the format YYYY-XXXX".into(),
        );
    }
    for (field, value) in [
        ("last_name", &profile.last_name),
        ("first_name", &profile.first_name),
        ("address", &profile.address),
        ("contact_number", &profile.contact_number),
    ] {
        if value.trim().is_empty() {
            errors.insert(field.into(), "required".into());
        }
    }
    match state.course(profile.course_id) {
        None => {
            errors.insert("course_id".into(), "unknown course".into());
        }
        Some(course) => match profile.major_id {
            None if !course.majors.is_empty() => {
                errors.insert("major_id".into(), "select a major for this course".into());
            }
            Some(_) if course.majors.is_empty() => {
                errors.insert("major_id".into(), "this course has no majors".into());
            }
            Some(major) if !course.has_major(major) => {
                errors.insert(
                    "major_id".into(),
                    "major does not belong to the course".into(),
                );
            }
            _ => {}
        },
    }
}

fn check_new_account(state: &State, account: &Account) -> Result<()> {
    let mut errors = FieldErrors::new();
    if let Some(problem) = validate_username(&account.username) {
        errors.insert("username".into(), problem.into());
    }
    match (account.role, &account.profile) {
        (Role::Examinee, None) => {
            errors.insert(
                "profile".into(),
                "examinee accounts need a student profile".into(),
            );
        }
        (Role::Admin, Some(_)) => {
            errors.insert(
                "profile".into(),
                "admin accounts have no student profile".into(),
            );
        }
        (Role::Examinee, Some(profile)) => validate_profile(state, profile, &mut errors),
        (Role::Admin, None) => {}
    }
    if account.role == Role::Examinee && account.scope_course_id.is_some() {
        errors.insert(
            "scope_course_id".into(),
            "only admins can be course-scoped".into(),
        );
    }
    if let Some(scope) = account.scope_course_id {
        if state.course(scope).is_none() {
            errors.insert("scope_course_id".into(), "unknown course".into());
        }
    }
    if !errors.is_empty() {
        return Err(StoreError::Validation(errors));
    }
    if state.account_by_username(&account.username).is_some() {
        return Err(StoreError::DuplicateKey("username"));
    }
    if let Some(profile) = &account.profile {
        let taken = state
            .accounts()
            .filter_map(|a| a.profile.as_ref())
            .any(|p| p.student_number == profile.student_number);
        if taken {
            return Err(StoreError::DuplicateKey("student number"));
        }
    }
    if state.account(account.account_id).is_some() {
        return Err(StoreError::DuplicateKey("account id"));
    }
    Ok(())
}

impl Store {
    pub fn create_account(&self, account: Account) -> Result<Account> {
        self.commit(|state| {
            check_new_account(state, &account)?;
            Ok((vec![Change::PutAccount(account.clone())], account))
        })
    }

    /// Idempotent: setting the current status again is a no-op.
    pub fn set_account_status(
        &self,
        id: AccountId,
        status: AccountStatus,
        now: DateTime<Utc>,
    ) -> Result<Account> {
        self.commit(|state| {
            let account = state.account(id).ok_or(StoreError::NotFound("account"))?;
            if account.status == status {
                return Ok((vec![], account.clone()));
            }
            let mut updated = account.clone();
            updated.status = status;
            updated.updated_at = Some(now);
            Ok((vec![Change::PutAccount(updated.clone())], updated))
        })
    }

    pub fn delete_account(&self, id: AccountId) -> Result<()> {
        self.commit(|state| {
            state.account(id).ok_or(StoreError::NotFound("account"))?;
            if state.attempts().any(|a| a.examinee_id == id) {
                return Err(StoreError::DeleteRestricted("account has exam attempts"));
            }
            Ok((vec![Change::DeleteAccount(id)], ()))
        })
    }

    pub fn account(&self, id: AccountId) -> Option<Account> {
        self.read(|s| s.account(id).cloned())
    }

    pub fn account_by_username(&self, username: &str) -> Option<Account> {
        self.read(|s| s.account_by_username(username).cloned())
    }

    pub fn list_accounts(&self, role: Option<Role>, status: Option<AccountStatus>) -> Vec<Account> {
        self.read(|s| {
            s.accounts()
                .filter(|a| {
                    role.is_none_or(|r| a.role == r) && status.is_none_or(|st| a.status == st)
                })
                .cloned()
                .collect()
        })
    }
}
