//! Entities owned by the store in addition to the exam-core types.

use chrono::{DateTime, NaiveDate, Utc};
use mockboard_core::{AccountId, AnnouncementId, CourseId, MajorId};
use serde::{Deserialize, Serialize};

use crate::password::PasswordDigest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Admin,
    Examinee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AccountStatus {
    Pending,
    Verified,
    Disabled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamineeProfile {
    pub student_number: String,
    pub last_name: String,
    pub first_name: String,
    pub middle_name: String,
    pub address: String,
    pub contact_number: String,
    pub birthdate: NaiveDate,
    pub course_id: CourseId,
    pub major_id: Option<MajorId>,
    pub terms_accepted: bool,
}

impl ExamineeProfile {
    /// `"Dela Cruz, Juan M."`
    pub fn display_name(&self) -> String {
        let mut name = format!("{}, {}", self.last_name.trim(), self.first_name.trim());
        if let Some(initial) = self.middle_name.trim().chars().next() {
            name.push(' ');
            name.push(initial);
            name.push('.');
        }
        name
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Account {
    pub account_id: AccountId,
    pub username: String,
    pub password: PasswordDigest,
    pub role: Role,
    pub status: AccountStatus,
    /// Admins only: restricts the admin to one course's entities.
    pub scope_course_id: Option<CourseId>,
    pub profile: Option<ExamineeProfile>,
    pub created_at: DateTime<Utc>,
    pub updated_at: Option<DateTime<Utc>>,
}

impl Account {
    pub fn is_admin(&self) -> bool {
        self.role == Role::Admin
    }

    pub fn course_id(&self) -> Option<CourseId> {
        self.profile.as_ref().map(|p| p.course_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Major {
    pub major_id: MajorId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Course {
    pub course_id: CourseId,
    pub name: String,
    pub majors: Vec<Major>,
    pub created_by: String,
    pub created_at: DateTime<Utc>,
    pub updated_at: Option<DateTime<Utc>>,
}

impl Course {
    pub fn has_major(&self, major: MajorId) -> bool {
        self.majors.iter().any(|m| m.major_id == major)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Announcement {
    pub announcement_id: AnnouncementId,
    pub body: String,
    pub author: String,
    pub created_at: DateTime<Utc>,
}
