//! Thin async client for the `/mockboard/api` service.
//!
//! ```no_run
//! # async fn demo() -> Result<(), mockboard_client::ClientError> {
//! let mut client = mockboard_client::Client::new("http://127.0.0.1:8080");
//! client.login("juan", "s3cret-pass").await?;
//! let dashboard = client.dashboard().await?;
//! println!("{} exams", dashboard.exams.len());
//! # Ok(())
//! # }
//! ```

use mockboard_api::*;
use mockboard_core::{AccountId, AnnouncementId, AttemptId, CourseId, ExamId, QuestionId};
use reqwest::{Method, RequestBuilder, StatusCode};
use serde::de::DeserializeOwned;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("{status} {}: {}", body.code, body.message)]
    Api { status: u16, body: ErrorBody },
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("unexpected response ({status}): {text}")]
    Unexpected { status: u16, text: String },
}

impl ClientError {
    /// Machine code of an API failure.
    pub fn code(&self) -> Option<&str> {
        match self {
            ClientError::Api { body, .. } => Some(&body.code),
            _ => None,
        }
    }

    pub fn status(&self) -> Option<u16> {
        match self {
            ClientError::Api { status, .. } | ClientError::Unexpected { status, .. } => {
                Some(*status)
            }
            ClientError::Transport(e) => e.status().map(|s| s.as_u16()),
        }
    }
}

pub type Result<T, E = ClientError> = std::result::Result<T, E>;

/// Cheap to clone; clones share the connection pool but not the token.
#[derive(Debug, Clone)]
pub struct Client {
    http: reqwest::Client,
    base: String,
    token: Option<String>,
}

impl Client {
    /// `server` is the scheme and authority, e.g. `http://127.0.0.1:8080`.
    pub fn new(server: &str) -> Self {
        Self::with_http(reqwest::Client::new(), server)
    }

    pub fn with_http(http: reqwest::Client, server: &str) -> Self {
        Client {
            http,
            base: format!("{}{}", server.trim_end_matches('/'), API_PREFIX),
            token: None,
        }
    }

    pub fn token(&self) -> Option<&str> {
        self.token.as_deref()
    }

    pub fn set_token(&mut self, token: Option<String>) {
        self.token = token;
    }

    /// A client sharing this one's connections but with its own session.
    pub fn fork(&self) -> Self {
        Client {
            token: None,
            ..self.clone()
        }
    }

    fn request(&self, method: Method, path: &str) -> RequestBuilder {
        let req = self.http.request(method, format!("{}{}", self.base, path));
        match &self.token {
            Some(t) => req.bearer_auth(t),
            None => req,
        }
    }

    async fn checked(req: RequestBuilder) -> Result<reqwest::Response> {
        let resp = req.send().await?;
        let status = resp.status();
        if status.is_success() {
            return Ok(resp);
        }
        let text = resp.text().await?;
        match serde_json::from_str::<ErrorBody>(&text) {
            Ok(body) => Err(ClientError::Api {
                status: status.as_u16(),
                body,
            }),
            Err(_) => Err(ClientError::Unexpected {
                status: status.as_u16(),
                text,
            }),
        }
    }

    async fn json<T: DeserializeOwned>(req: RequestBuilder) -> Result<T> {
        Ok(Self::checked(req).await?.json().await?)
    }

    async fn text(req: RequestBuilder) -> Result<String> {
        Ok(Self::checked(req).await?.text().await?)
    }

    async fn empty(req: RequestBuilder) -> Result<()> {
        let resp = Self::checked(req).await?;
        debug_assert!(resp.status() == StatusCode::NO_CONTENT || resp.status().is_success());
        Ok(())
    }

    // Public and session

    pub async fn health(&self) -> Result<Health> {
        Self::json(self.request(Method::GET, "/health")).await
    }

    pub async fn register(&self, req: &RegisterRequest) -> Result<AccountView> {
        Self::json(self.request(Method::POST, "/register").json(req)).await
    }

    pub async fn registration_courses(&self) -> Result<Vec<CourseView>> {
        Self::json(self.request(Method::GET, "/registration/courses")).await
    }

    /// Signs in and keeps the token for later calls.
    pub async fn login(&mut self, username: &str, password: &str) -> Result<LoginResponse> {
        let body = LoginRequest {
            username: username.into(),
            password: password.into(),
        };
        let resp: LoginResponse =
            Self::json(self.request(Method::POST, "/login").json(&body)).await?;
        self.token = Some(resp.token.clone());
        Ok(resp)
    }

    pub async fn logout(&mut self) -> Result<()> {
        Self::empty(self.request(Method::POST, "/logout")).await?;
        self.token = None;
        Ok(())
    }

    pub async fn me(&self) -> Result<AccountView> {
        Self::json(self.request(Method::GET, "/me")).await
    }

    // Examinee

    pub async fn dashboard(&self) -> Result<DashboardResponse> {
        Self::json(self.request(Method::GET, "/dashboard")).await
    }

    pub async fn start_attempt(&self, exam_id: ExamId) -> Result<AttemptView> {
        Self::json(
            self.request(Method::POST, "/attempts")
                .json(&StartAttemptRequest { exam_id }),
        )
        .await
    }

    pub async fn attempt(&self, id: AttemptId) -> Result<AttemptView> {
        Self::json(self.request(Method::GET, &format!("/attempts/{id}"))).await
    }

    /// `choice` is the authored index, as listed in `choice_order`.
    pub async fn save_answer(
        &self,
        id: AttemptId,
        question: QuestionId,
        choice: u8,
    ) -> Result<AnswerAck> {
        Self::json(
            self.request(Method::PUT, &format!("/attempts/{id}/answers/{question}"))
                .json(&AnswerRequest { choice }),
        )
        .await
    }

    pub async fn submit(&self, id: AttemptId) -> Result<ResultView> {
        Self::json(self.request(Method::POST, &format!("/attempts/{id}/submit"))).await
    }

    pub async fn result(&self, id: AttemptId) -> Result<ResultView> {
        Self::json(self.request(Method::GET, &format!("/attempts/{id}/result"))).await
    }

    /// Own certificate for examinees; admins pass the examinee.
    pub async fn certificate(&self, examinee: Option<AccountId>) -> Result<Certificate> {
        let mut req = self.request(Method::GET, "/certificate");
        if let Some(id) = examinee {
            req = req.query(&[("examinee_id", id.to_string())]);
        }
        Self::json(req).await
    }

    pub async fn certificate_html(&self, examinee: Option<AccountId>) -> Result<String> {
        let mut req = self
            .request(Method::GET, "/certificate")
            .query(&[("format", "html")]);
        if let Some(id) = examinee {
            req = req.query(&[("examinee_id", id.to_string())]);
        }
        Self::text(req).await
    }

    // Admin: catalog

    pub async fn courses(&self) -> Result<Vec<CourseView>> {
        Self::json(self.request(Method::GET, "/courses")).await
    }

    pub async fn create_course(&self, req: &CourseRequest) -> Result<CourseView> {
        Self::json(self.request(Method::POST, "/courses").json(req)).await
    }

    pub async fn update_course(&self, id: CourseId, req: &CourseRequest) -> Result<CourseView> {
        Self::json(
            self.request(Method::PUT, &format!("/courses/{id}"))
                .json(req),
        )
        .await
    }

    pub async fn delete_course(&self, id: CourseId) -> Result<()> {
        Self::empty(self.request(Method::DELETE, &format!("/courses/{id}"))).await
    }

    pub async fn exams(&self, course: Option<CourseId>) -> Result<Vec<Exam>> {
        let mut req = self.request(Method::GET, "/exams");
        if let Some(c) = course {
            req = req.query(&[("course_id", c.to_string())]);
        }
        Self::json(req).await
    }

    pub async fn exam(&self, id: ExamId) -> Result<Exam> {
        Self::json(self.request(Method::GET, &format!("/exams/{id}"))).await
    }

    pub async fn create_exam(&self, req: &ExamRequest) -> Result<ExamResponse> {
        Self::json(self.request(Method::POST, "/exams").json(req)).await
    }

    pub async fn update_exam(&self, id: ExamId, req: &ExamRequest) -> Result<ExamResponse> {
        Self::json(self.request(Method::PUT, &format!("/exams/{id}")).json(req)).await
    }

    pub async fn delete_exam(&self, id: ExamId) -> Result<()> {
        Self::empty(self.request(Method::DELETE, &format!("/exams/{id}"))).await
    }

    pub async fn questions(&self, exam: ExamId) -> Result<Vec<Question>> {
        Self::json(self.request(Method::GET, &format!("/exams/{exam}/questions"))).await
    }

    pub async fn add_question(&self, exam: ExamId, req: &QuestionRequest) -> Result<Question> {
        Self::json(
            self.request(Method::POST, &format!("/exams/{exam}/questions"))
                .json(req),
        )
        .await
    }

    pub async fn add_questions(
        &self,
        exam: ExamId,
        questions: Vec<QuestionRequest>,
    ) -> Result<Vec<Question>> {
        Self::json(
            self.request(Method::POST, &format!("/exams/{exam}/questions/batch"))
                .json(&QuestionBatch { questions }),
        )
        .await
    }

    pub async fn update_question(
        &self,
        exam: ExamId,
        id: QuestionId,
        req: &QuestionRequest,
    ) -> Result<Question> {
        Self::json(
            self.request(Method::PUT, &format!("/exams/{exam}/questions/{id}"))
                .json(req),
        )
        .await
    }

    pub async fn delete_question(&self, exam: ExamId, id: QuestionId) -> Result<()> {
        Self::empty(self.request(Method::DELETE, &format!("/exams/{exam}/questions/{id}"))).await
    }

    // Admin: accounts and announcements

    /// `status` is `pending`, `verified` or `disabled`.
    pub async fn accounts(&self, status: Option<&str>) -> Result<Vec<AccountView>> {
        let mut req = self.request(Method::GET, "/accounts");
        if let Some(s) = status {
            req = req.query(&[("status", s)]);
        }
        Self::json(req).await
    }

    pub async fn verify_account(&self, id: AccountId) -> Result<AccountView> {
        Self::json(self.request(Method::POST, &format!("/accounts/{id}/verify"))).await
    }

    pub async fn disable_account(&self, id: AccountId) -> Result<AccountView> {
        Self::json(self.request(Method::POST, &format!("/accounts/{id}/disable"))).await
    }

    pub async fn announcements(&self) -> Result<Vec<AnnouncementView>> {
        Self::json(self.request(Method::GET, "/announcements")).await
    }

    pub async fn post_announcement(&self, body: &str) -> Result<AnnouncementView> {
        Self::json(
            self.request(Method::POST, "/announcements")
                .json(&AnnouncementRequest { body: body.into() }),
        )
        .await
    }

    pub async fn delete_announcement(&self, id: AnnouncementId) -> Result<()> {
        Self::empty(self.request(Method::DELETE, &format!("/announcements/{id}"))).await
    }

    // Admin: reports

    pub async fn grade_report(&self, exam: ExamId) -> Result<GradeReport> {
        Self::json(self.request(Method::GET, &format!("/reports/grades/{exam}"))).await
    }

    pub async fn grade_csv(&self, exam: ExamId) -> Result<String> {
        Self::text(self.request(Method::GET, &format!("/reports/grades/{exam}.csv"))).await
    }

    pub async fn item_analysis(&self, exam: ExamId) -> Result<ItemAnalysisReport> {
        Self::json(self.request(Method::GET, &format!("/reports/item-analysis/{exam}"))).await
    }
}
